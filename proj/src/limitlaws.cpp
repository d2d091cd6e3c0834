#include "mspec/limitlaws.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mspec/pathcomb.hpp"
#include "mspec/tolerances.hpp"

namespace mspec {

namespace {

constexpr int kQuantileNodes = 100000;  // empirical-vs-reference quadrature

}  // namespace

ReferenceLaw::ReferenceLaw(Kind kind, double param) : kind_(kind), param_(param) {
    half_width_ = kind_ == Kind::kSemicircle ? 2.0 * param_ : param_;
}

ReferenceLaw ReferenceLaw::semicircle(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("semicircle: need sigma > 0");
    return ReferenceLaw(Kind::kSemicircle, sigma);
}

ReferenceLaw ReferenceLaw::arcsine(double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("arcsine: need a > 0");
    return ReferenceLaw(Kind::kArcSine, half_width);
}

double ReferenceLaw::density(double x) const {
    if (x <= -half_width_ || x >= half_width_) return 0.0;
    if (kind_ == Kind::kSemicircle) {
        const double s2 = param_ * param_;
        return std::sqrt(4.0 * s2 - x * x) / (2.0 * std::numbers::pi * s2);
    }
    return 1.0 / (std::numbers::pi * std::sqrt(half_width_ * half_width_ - x * x));
}

double ReferenceLaw::cdf(double x) const {
    if (x <= -half_width_) return 0.0;
    if (x >= half_width_) return 1.0;
    if (kind_ == Kind::kSemicircle) {
        const double s2 = param_ * param_;
        const double anti = 0.5 * x * std::sqrt(4.0 * s2 - x * x) +
                            2.0 * s2 * std::asin(x / (2.0 * param_));
        return 0.5 + anti / (2.0 * std::numbers::pi * s2);
    }
    return 0.5 + std::asin(x / half_width_) / std::numbers::pi;
}

double ReferenceLaw::quantile(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("quantile: t must lie in [0, 1]");
    if (t == 0.0) return -half_width_;
    if (t == 1.0) return half_width_;
    if (kind_ == Kind::kArcSine) {
        return -half_width_ * std::cos(std::numbers::pi * t);
    }
    // monotone bisection on the closed-form CDF
    double lo = -half_width_, hi = half_width_;
    while (hi - lo > 1e-12 * half_width_) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ReferenceLaw::moment(int k) const {
    if (k < 0) throw std::invalid_argument("moment: order must be >= 0");
    if (k % 2 == 1) return 0.0;
    const int half = k / 2;
    if (kind_ == Kind::kSemicircle) {
        return std::pow(param_, k) * static_cast<double>(catalan(half));
    }
    return std::pow(0.5 * half_width_, k) * static_cast<double>(binomial(k, half));
}

namespace {

double quantile_lp_to_p(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                        double p) {
    // exact integral of |F_mu^{-1} - F_nu^{-1}|^p over the merged
    // cumulative-weight breakpoints; both cumulatives end at exactly 1
    const auto& xa = mu.atoms();
    const auto& xb = nu.atoms();
    const auto& ca = mu.cumulative();
    const auto& cb = nu.cumulative();
    std::size_t i = 0, j = 0;
    double t = 0.0, acc = 0.0;
    while (i < xa.size() && j < xb.size()) {
        const double next = std::min(ca[i], cb[j]);
        acc += (next - t) * std::pow(std::abs(xa[i] - xb[j]), p);
        t = next;
        if (ca[i] == next) ++i;
        if (cb[j] == next) ++j;
    }
    return acc;
}

}  // namespace

double wasserstein_p(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                     double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_p: need p >= 1");
    return std::pow(quantile_lp_to_p(mu, nu, p), 1.0 / p);
}

double wasserstein_p(const EmpiricalDistribution& mu, const ReferenceLaw& nu, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_p: need p >= 1");
    double acc = 0.0;
    for (int j = 0; j < kQuantileNodes; ++j) {
        const double t = (j + 0.5) / kQuantileNodes;
        acc += std::pow(std::abs(mu.quantile(t) - nu.quantile(t)), p);
    }
    return std::pow(acc / kQuantileNodes, 1.0 / p);
}

double levy_cube_bound(const Matrix& a, const Matrix& b) {
    const int n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("levy_cube_bound: dimension mismatch");
    if (!a.is_symmetric(tol::kSymmetry * std::max(1.0, a.max_abs())) ||
        !b.is_symmetric(tol::kSymmetry * std::max(1.0, b.max_abs())))
        throw std::invalid_argument("levy_cube_bound: matrices must be symmetric");
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d = a(i, j) - b(i, j);
            acc += d * d;
        }
    }
    return acc / n;
}

Matrix build_wigner(int n, const DistributionSpec& law, SeededRng& rng, bool centered) {
    if (n < 1) throw std::invalid_argument("build_wigner: need n >= 1");
    validate(law);
    const double mean = centered ? law_mean(law) : 0.0;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    Matrix w(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = (sample_weight(law, rng) - mean) * inv_sqrt_n;
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return w;
}

}  // namespace mspec
