#include "mspec/kernels.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mspec {

Matrix matmul(const Matrix& a, const Matrix& b) {
    const int n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix c(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

ProbabilityVector::ProbabilityVector(std::vector<double> weights, double sum_tol)
    : weights_(std::move(weights)) {
    if (weights_.empty())
        throw std::invalid_argument("ProbabilityVector: empty weight vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("ProbabilityVector: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > sum_tol)
        throw std::invalid_argument("ProbabilityVector: weights must sum to 1");
}

double tv_distance(const ProbabilityVector& mu, const ProbabilityVector& nu) {
    if (mu.dim() != nu.dim())
        throw std::invalid_argument("tv_distance: dimension mismatch");
    double acc = 0.0;
    for (int i = 0; i < mu.dim(); ++i) acc += std::abs(mu[i] - nu[i]);
    return 0.5 * acc;
}

ProbabilityVector uniform_probability(int n) {
    return ProbabilityVector(std::vector<double>(n, 1.0 / n));
}

Lambda3 reflect_minus(const Lambda3& v) { return {v.c + v.b, v.a, 0.0}; }
Lambda3 reflect_plus(const Lambda3& v) { return {0.0, v.a, v.c + v.b}; }

DenseKernel build_complete_kernel(int n, const DistributionSpec& law, SeededRng& rng) {
    if (n < 1) throw std::invalid_argument("build_complete_kernel: need n >= 1");
    if (n > kDenseDimCap)
        throw std::invalid_argument("build_complete_kernel: dense model capped at n = " +
                                    std::to_string(kDenseDimCap));
    validate(law);

    DenseKernel k;
    k.n = n;
    k.upper.resize(static_cast<std::size_t>(n) * (n + 1) / 2);
    // upper triangle sampled row by row, i <= j; the stream order defines
    // the object, so a fixed seed reproduces U exactly
    for (double& u : k.upper) u = sample_weight(law, rng);

    k.row_sums.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double rho = 0.0;
        for (int j = 0; j < n; ++j) rho += k.weight(i, j);
        k.row_sums[i] = rho;
    }

    k.kernel = Matrix(n);
    for (int i = 0; i < n; ++i) {
        if (k.row_sums[i] > 0.0) {
            for (int j = 0; j < n; ++j) k.kernel(i, j) = k.weight(i, j) / k.row_sums[i];
        } else {
            k.kernel(i, i) = 1.0;  // isolated vertex
        }
    }
    return k;
}

TridiagonalKernel build_chain_kernel_iid(int n, const DistributionSpec& law,
                                         SeededRng& rng) {
    if (n < 2) throw std::invalid_argument("build_chain_kernel_iid: need n >= 2");
    validate(law);
    if (!support_in_unit_interval(law))
        throw std::domain_error("build_chain_kernel_iid: law support must lie in [0, 1]");

    TridiagonalKernel k;
    k.n = n;
    k.down.assign(n, 0.0);
    k.diag.assign(n, 0.0);
    k.up.assign(n, 0.0);
    k.up[0] = 1.0;
    k.down[n - 1] = 1.0;
    for (int i = 1; i < n - 1; ++i) {
        const double v = sample_weight(law, rng);
        if (!(v > 0.0) || !(v < 1.0))
            throw std::domain_error(
                "build_chain_kernel_iid: degenerate draw V in {0, 1} at site " +
                std::to_string(i + 1));
        k.up[i] = v;
        k.down[i] = 1.0 - v;
    }
    return k;
}

TridiagonalKernel build_chain_kernel_ergodic(int n, const std::vector<Lambda3>& field,
                                             BoundaryCondition, double row_tol) {
    if (n < 2) throw std::invalid_argument("build_chain_kernel_ergodic: need n >= 2");
    if (static_cast<int>(field.size()) != n)
        throw std::invalid_argument("build_chain_kernel_ergodic: field size must equal n");
    for (const Lambda3& v : field) {
        if (!(v.c >= 0.0) || !(v.a >= 0.0) || !(v.b >= 0.0) ||
            std::abs(v.c + v.a + v.b - 1.0) > row_tol)
            throw std::invalid_argument(
                "build_chain_kernel_ergodic: rows must lie in the simplex");
    }

    TridiagonalKernel k;
    k.n = n;
    k.down.assign(n, 0.0);
    k.diag.assign(n, 0.0);
    k.up.assign(n, 0.0);

    const Lambda3 first = reflect_plus(field[0]);
    const Lambda3 last = reflect_minus(field[n - 1]);
    k.diag[0] = first.a;
    k.up[0] = first.b;
    k.diag[n - 1] = last.a;
    k.down[n - 1] = last.c;
    for (int i = 1; i < n - 1; ++i) {
        k.down[i] = field[i].c;
        k.diag[i] = field[i].a;
        k.up[i] = field[i].b;
    }
    for (int i = 0; i < n - 1; ++i) {
        if (!(k.up[i] > 0.0) || !(k.down[i + 1] > 0.0))
            throw std::invalid_argument(
                "build_chain_kernel_ergodic: degenerate row, chain not irreducible");
    }
    return k;
}

ProbabilityVector invariant_measure(const DenseKernel& kernel) {
    double total = 0.0;
    for (double r : kernel.row_sums) total += r;
    if (!(total > 0.0))
        throw std::invalid_argument("invariant_measure: all rows isolated");
    std::vector<double> w(kernel.n);
    for (int i = 0; i < kernel.n; ++i) w[i] = kernel.row_sums[i] / total;
    return ProbabilityVector(std::move(w));
}

ProbabilityVector invariant_measure(const TridiagonalKernel& kernel) {
    const int n = kernel.n;
    std::vector<double> log_rho(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        log_rho[i + 1] = log_rho[i] + std::log(kernel.up[i]) - std::log(kernel.down[i + 1]);
        if (std::isnan(log_rho[i + 1]))
            throw std::invalid_argument("invariant_measure: NaN in chain coefficients");
    }
    double top = log_rho[0];
    for (double lr : log_rho) top = std::max(top, lr);
    double z = 0.0;
    for (double lr : log_rho) z += std::exp(lr - top);
    std::vector<double> w(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i] = std::exp(log_rho[i] - top) / z;
        sum += w[i];
    }
    // absorb the last rounding residue so the weights sum to 1 exactly enough
    for (double& x : w) x /= sum;
    return ProbabilityVector(std::move(w));
}

Matrix symmetrize(const DenseKernel& kernel) {
    const int n = kernel.n;
    for (int i = 0; i < n; ++i) {
        if (!(kernel.row_sums[i] > 0.0))
            throw std::invalid_argument(
                "symmetrize: isolated vertex (rho = 0) at row " + std::to_string(i + 1));
    }
    Matrix s(n);
    std::vector<double> inv_sqrt(n);
    for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(kernel.row_sums[i]);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = kernel.weight(i, j) * inv_sqrt[i] * inv_sqrt[j];
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

SymmetricTridiagonal symmetrize(const TridiagonalKernel& kernel) {
    const int n = kernel.n;
    SymmetricTridiagonal s;
    s.diag = kernel.diag;
    s.off.resize(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        const double prod = kernel.up[i] * kernel.down[i + 1];
        if (!(prod > 0.0))
            throw std::invalid_argument("symmetrize: degenerate chain row " +
                                        std::to_string(i + 1));
        s.off[i] = std::sqrt(prod);
    }
    return s;
}

void write_kernel_csv(const DenseKernel& kernel, std::ostream& out) {
    out << "i,j,k_ij\n";
    char buf[32];
    for (int i = 0; i < kernel.n; ++i) {
        for (int j = 0; j < kernel.n; ++j) {
            const double v = kernel.kernel(i, j);
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << (i + 1) << ',' << (j + 1) << ',' << buf << '\n';
        }
    }
}

void write_kernel_csv(const TridiagonalKernel& kernel, std::ostream& out) {
    out << "i,c,a,b\n";
    char c[32], a[32], b[32];
    for (int i = 0; i < kernel.n; ++i) {
        std::snprintf(c, sizeof(c), "%.17g", kernel.down[i]);
        std::snprintf(a, sizeof(a), "%.17g", kernel.diag[i]);
        std::snprintf(b, sizeof(b), "%.17g", kernel.up[i]);
        out << (i + 1) << ',' << c << ',' << a << ',' << b << '\n';
    }
}

}  // namespace mspec
