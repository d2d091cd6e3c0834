#include "mspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mspec {

namespace {

constexpr int kMaxQlSweeps = 50;

double ipow(double x, int k) {
    double r = 1.0;
    while (k > 0) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

// Implicit-shift QL sweeps on (d, e); d becomes the eigenvalues, unsorted.
// Classic tql1 scheme (Bowdler-Martin-Reinsch-Wilkinson), no vectors.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) throw std::invalid_argument("eig_sym_tridiagonal: empty matrix");
    if (n == 1) return;
    const double eps = std::numeric_limits<double>::epsilon();
    e.push_back(0.0);  // e[n-1] sentinel

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxQlSweeps)
                    throw std::runtime_error(
                        "eig_sym_tridiagonal: no convergence after 50 QL sweeps");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);  // Wilkinson shift
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {  // rotation annihilated; split here and retry
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> atoms,
                                             std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty() || atoms_.size() != weights_.size())
        throw std::invalid_argument("EmpiricalDistribution: atoms/weights mismatch");
    std::vector<std::size_t> order(atoms_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) { return atoms_[a] < atoms_[b]; });
    std::vector<double> a(atoms_.size()), w(atoms_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        a[i] = atoms_[order[i]];
        w[i] = weights_[order[i]];
    }
    atoms_ = std::move(a);
    weights_ = std::move(w);

    double sum = 0.0;
    cum_.resize(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] > 0.0))
            throw std::invalid_argument("EmpiricalDistribution: weights must be positive");
        sum += weights_[i];
        cum_[i] = sum;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("EmpiricalDistribution: weights must sum to 1");
    cum_.back() = 1.0;
}

double EmpiricalDistribution::quantile(double t) const {
    if (t <= 0.0) return atoms_.front();
    if (t >= 1.0) return atoms_.back();
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), t);
    return atoms_[static_cast<std::size_t>(it - cum_.begin())];
}

double EmpiricalDistribution::cdf(double x) const {
    const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
    const std::size_t idx = static_cast<std::size_t>(it - atoms_.begin());
    return idx == 0 ? 0.0 : cum_[idx - 1];
}

Spectrum eig_sym_tridiagonal(std::vector<double> diag, std::vector<double> offdiag) {
    if (offdiag.size() + 1 != diag.size())
        throw std::invalid_argument("eig_sym_tridiagonal: offdiag must have size n-1");
    for (double v : diag)
        if (!std::isfinite(v))
            throw std::invalid_argument("eig_sym_tridiagonal: non-finite entry");
    for (double v : offdiag)
        if (!std::isfinite(v))
            throw std::invalid_argument("eig_sym_tridiagonal: non-finite entry");
    ql_implicit_shift(diag, offdiag);
    std::sort(diag.begin(), diag.end());
    return Spectrum{std::move(diag)};
}

Spectrum eig_sym_dense(const Matrix& sym, double sym_tol) {
    const int n = sym.dim();
    if (n == 0) throw std::invalid_argument("eig_sym_dense: empty matrix");
    if (!sym.is_symmetric(sym_tol * std::max(1.0, sym.max_abs())))
        throw std::invalid_argument("eig_sym_dense: matrix is not symmetric");
    if (n == 1) return Spectrum{{sym(0, 0)}};

    // Householder reduction to tridiagonal form (tred1 scheme, vectors
    // discarded). Works on a copy, rows processed back to front.
    Matrix a = sym;
    std::vector<double> d(n), e(n, 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k) {
                        a(j, k) -= f * e[k] + g * a(i, k);
                    }
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
    e.erase(e.begin());  // offdiagonal is e[1..n-1]

    return eig_sym_tridiagonal(std::move(d), std::move(e));
}

Spectrum kernel_spectrum(const DenseKernel& kernel) {
    return eig_sym_dense(symmetrize(kernel));
}

Spectrum kernel_spectrum(const TridiagonalKernel& kernel) {
    SymmetricTridiagonal s = symmetrize(kernel);
    return eig_sym_tridiagonal(std::move(s.diag), std::move(s.off));
}

EmpiricalDistribution esd(const Spectrum& spectrum, double scale, bool trim_top) {
    const int n = spectrum.dim();
    if (trim_top && n < 2)
        throw std::invalid_argument("esd: cannot trim the top of a 1-point spectrum");
    const int count = trim_top ? n - 1 : n;
    std::vector<double> atoms(count), weights(count, 1.0 / count);
    for (int i = 0; i < count; ++i) atoms[i] = scale * spectrum.values[i];
    return EmpiricalDistribution(std::move(atoms), std::move(weights));
}

double esd_moment(const EmpiricalDistribution& dist, int order) {
    if (order < 0) throw std::invalid_argument("esd_moment: order must be >= 0");
    double acc = 0.0;
    for (int i = 0; i < dist.size(); ++i) {
        acc += dist.weights()[i] * ipow(dist.atoms()[i], order);
    }
    return acc;
}

double spectral_gap(const Spectrum& spectrum) {
    if (spectrum.dim() < 2) throw std::invalid_argument("spectral_gap: need n >= 2");
    return 1.0 - spectrum.second_largest();
}

double varsigma(const Spectrum& spectrum) {
    if (spectrum.dim() < 2) throw std::invalid_argument("varsigma: need n >= 2");
    return 1.0 - std::max(-spectrum.smallest(), spectrum.second_largest());
}

int sturm_count_below(const std::vector<double>& diag, const std::vector<double>& offdiag,
                      double x) {
    const int n = static_cast<int>(diag.size());
    if (static_cast<int>(offdiag.size()) + 1 != n)
        throw std::invalid_argument("sturm_count_below: offdiag must have size n-1");
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        if (q == 0.0) q = tiny;
        q = diag[i] - x - offdiag[i - 1] * offdiag[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace mspec
