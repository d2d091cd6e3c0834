#pragma once

// Shared test oracles. Everything here is deliberately independent of the
// library's solver paths: plain Gaussian elimination, permutation search,
// grid bisection, Newton-identity characteristic polynomials.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mspec/matrix.hpp"
#include "mspec/rng.hpp"
#include "mspec/spectra.hpp"

namespace testutil {

inline mspec::Matrix random_symmetric(int n, mspec::SeededRng& rng, double lo = -1.0,
                                      double hi = 1.0) {
    mspec::Matrix a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = lo + (hi - lo) * rng.next_double();
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

// Solve A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(mspec::Matrix a, std::vector<double> b) {
    const int n = a.dim();
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        const double d = a(col, col);
        if (d == 0.0) throw std::runtime_error("solve_linear: singular matrix");
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / d;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[c];
        x[r] = acc / a(r, r);
    }
    return x;
}

// Refine an approximate eigenvalue by shifted inverse iteration and
// return the final Rayleigh quotient.
inline double inverse_iteration_refine(const mspec::Matrix& a, double approx,
                                       mspec::SeededRng& rng, int iterations = 4) {
    const int n = a.dim();
    const double scale = std::max(1.0, a.max_abs());
    mspec::Matrix shifted = a;
    for (int i = 0; i < n; ++i) shifted(i, i) -= approx + 1e-9 * scale;

    std::vector<double> v(n);
    for (double& x : v) x = rng.next_double() - 0.5;
    for (int it = 0; it < iterations; ++it) {
        v = solve_linear(shifted, std::move(v));
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += a(i, j) * v[j];
        num += v[i] * row;
    }
    return num;  // v is unit norm
}

// W_p for two uniform-weight atom lists by exhaustive matching.
inline double wasserstein_bruteforce(std::vector<double> xs, std::vector<double> ys,
                                     double p) {
    if (xs.size() != ys.size()) throw std::invalid_argument("bruteforce: size mismatch");
    std::vector<int> perm(xs.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            acc += std::pow(std::abs(xs[i] - ys[perm[i]]), p);
        }
        best = std::min(best, acc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::pow(best / xs.size(), 1.0 / p);
}

// Levy distance between two empirical CDFs by bisection on the
// feasibility predicate; resolution 1e-6. Returns a certified upper
// bound on the true distance.
inline double levy_distance(const mspec::EmpiricalDistribution& mu,
                            const mspec::EmpiricalDistribution& nu) {
    auto feasible = [&](double eps) {
        for (double x : mu.atoms()) {
            if (mu.cdf(x) > nu.cdf(x + eps) + eps + 1e-15) return false;
        }
        for (double x : nu.atoms()) {
            if (nu.cdf(x) > mu.cdf(x + eps) + eps + 1e-15) return false;
        }
        return true;
    };
    double lo = 0.0, hi = 1.0 + std::abs(mu.atoms().back() - nu.atoms().front()) +
                            std::abs(nu.atoms().back() - mu.atoms().front());
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;
}

// Coefficients of det(xI - A) by Newton's identities on the power sums
// p_j = Tr(A^j) (the trace form of the Leverrier recursion). Returns
// monic coefficients c so that the polynomial is sum_j c[j] x^j.
inline std::vector<double> charpoly_leverrier(const mspec::Matrix& a) {
    const int n = a.dim();
    std::vector<double> power_sums(n + 1, 0.0);
    mspec::Matrix pw = a;
    for (int j = 1; j <= n; ++j) {
        power_sums[j] = pw.trace();
        if (j < n) pw = mspec::matmul(pw, a);
    }
    std::vector<double> e(n + 1, 0.0);  // elementary symmetric functions
    e[0] = 1.0;
    for (int j = 1; j <= n; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= j; ++i) {
            acc += (i % 2 == 1 ? 1.0 : -1.0) * e[j - i] * power_sums[i];
        }
        e[j] = acc / j;
    }
    std::vector<double> coeff(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        coeff[n - j] = (j % 2 == 0 ? 1.0 : -1.0) * e[j];
    }
    return coeff;
}

inline double polyval(const std::vector<double>& coeff, double x) {
    double acc = 0.0;
    for (int j = static_cast<int>(coeff.size()) - 1; j >= 0; --j) {
        acc = acc * x + coeff[j];
    }
    return acc;
}

// All real roots of a polynomial with simple roots inside [lo, hi]:
// scan a fine grid for sign changes, then bisect each bracket.
inline std::vector<double> poly_roots_bisect(const std::vector<double>& coeff, double lo,
                                             double hi, int grid = 200000) {
    std::vector<double> roots;
    double prev_x = lo, prev_f = polyval(coeff, lo);
    for (int g = 1; g <= grid; ++g) {
        const double x = lo + (hi - lo) * g / grid;
        const double f = polyval(coeff, x);
        if (prev_f == 0.0) roots.push_back(prev_x);
        if (prev_f * f < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            for (int it = 0; it < 100; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = polyval(coeff, m);
                if (fa * fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = f;
    }
    return roots;
}

// Simpson rule on a smooth function.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      int panels = 20000) {
    const double h = (hi - lo) / (2 * panels);
    double acc = f(lo) + f(hi);
    for (int i = 1; i < 2 * panels; ++i) {
        acc += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

// Composite midpoint rule; never touches the interval endpoints.
inline double midpoint(const std::function<double(double)>& f, double lo, double hi,
                       int panels = 200000) {
    const double h = (hi - lo) / panels;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        acc += f(lo + (i + 0.5) * h);
    }
    return acc * h;
}

}  // namespace testutil
