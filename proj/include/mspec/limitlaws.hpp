#pragma once

#include "mspec/law.hpp"
#include "mspec/matrix.hpp"
#include "mspec/rng.hpp"
#include "mspec/spectra.hpp"

namespace mspec {

// Compactly supported reference laws with closed-form density, CDF,
// quantile and moments: the semicircle on [-2s, 2s] and the arc-sine law
// on [-a, a].
class ReferenceLaw {
public:
    static ReferenceLaw semicircle(double sigma);
    static ReferenceLaw arcsine(double half_width);

    double density(double x) const;
    double cdf(double x) const;
    double quantile(double t) const;
    // k-th moment: 0 for odd k; sigma^k Catalan(k/2) for the semicircle,
    // (a/2)^k binom(k, k/2) for the arc-sine law.
    double moment(int k) const;

    double support_min() const { return -half_width_; }
    double support_max() const { return half_width_; }

private:
    enum class Kind { kSemicircle, kArcSine };
    ReferenceLaw(Kind kind, double param);

    Kind kind_;
    double param_;       // sigma or a
    double half_width_;  // 2*sigma or a
};

// Wasserstein distance of order p >= 1 via quantile functions. The
// empirical/empirical case is an exact merge of the two step quantile
// functions; against a reference law the integral uses midpoint
// quadrature on 1e5 uniform nodes.
double wasserstein_p(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                     double p);
double wasserstein_p(const EmpiricalDistribution& mu, const ReferenceLaw& nu, double p);

// (1/n) sum_{ij} (A_ij - B_ij)^2, an upper bound for the cubed Levy
// distance between the spectral CDFs of two symmetric matrices.
double levy_cube_bound(const Matrix& a, const Matrix& b);

// Symmetric matrix with i.i.d. upper triangle: entries (U_ij - m)/sqrt(n)
// when centered (m the law mean), U_ij/sqrt(n) otherwise.
Matrix build_wigner(int n, const DistributionSpec& law, SeededRng& rng, bool centered);

}  // namespace mspec
