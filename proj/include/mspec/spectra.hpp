#pragma once

#include <vector>

#include "mspec/kernels.hpp"
#include "mspec/matrix.hpp"

namespace mspec {

// Real eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> values;

    int dim() const { return static_cast<int>(values.size()); }
    double largest() const { return values.back(); }
    double second_largest() const { return values[values.size() - 2]; }
    double smallest() const { return values.front(); }
};

// Finite atomic probability measure on the real line.
class EmpiricalDistribution {
public:
    EmpiricalDistribution(std::vector<double> atoms, std::vector<double> weights);

    int size() const { return static_cast<int>(atoms_.size()); }
    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    // cumulative weights; the last entry is exactly 1
    const std::vector<double>& cumulative() const { return cum_; }

    // Generalized inverse CDF: smallest atom with cumulative weight >= t.
    double quantile(double t) const;
    double cdf(double x) const;

private:
    std::vector<double> atoms_;    // ascending
    std::vector<double> weights_;  // positive, sum 1
    std::vector<double> cum_;
};

// All eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL
// (Wilkinson shift, eigenvalues only, O(n^2)). Throws std::runtime_error
// if any eigenvalue fails to settle within 50 sweeps.
Spectrum eig_sym_tridiagonal(std::vector<double> diag, std::vector<double> offdiag);

// Householder reduction to tridiagonal form followed by QL. The input
// must be symmetric within sym_tol relative to its largest entry.
Spectrum eig_sym_dense(const Matrix& sym, double sym_tol = tol::kSymmetry);

// Spectrum of a reversible kernel via its symmetric conjugate.
Spectrum kernel_spectrum(const DenseKernel& kernel);
Spectrum kernel_spectrum(const TridiagonalKernel& kernel);

// Empirical spectral distribution: atoms scale*lambda_k with weight 1/n,
// or with the largest eigenvalue removed and weights 1/(n-1).
EmpiricalDistribution esd(const Spectrum& spectrum, double scale = 1.0,
                          bool trim_top = false);

double esd_moment(const EmpiricalDistribution& dist, int order);

double spectral_gap(const Spectrum& spectrum);  // 1 - lambda_2
double varsigma(const Spectrum& spectrum);      // 1 - max(-lambda_n, lambda_2)

// Number of eigenvalues strictly below x (Sturm sequence count); used to
// cross-check solver output.
int sturm_count_below(const std::vector<double>& diag, const std::vector<double>& offdiag,
                      double x);

}  // namespace mspec
