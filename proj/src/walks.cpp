#include "mspec/walks.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mspec/spectra.hpp"

namespace mspec {

namespace {

void check_site(int site, int n) {
    if (site < 0 || site >= n)
        throw std::invalid_argument("return probability: site out of range");
}

void check_steps(int steps) {
    if (steps < 0) throw std::invalid_argument("return probability: steps must be >= 0");
}

// One distribution update v <- v K for the chain restricted to the window
// [lo, hi]; in `steps` steps the walk cannot leave that window, so the
// restriction is exact.
void chain_step(const TridiagonalKernel& k, std::vector<double>& v,
                std::vector<double>& next, int lo, int hi) {
    const int width = hi - lo + 1;
    for (int j = 0; j < width; ++j) next[j] = v[j] * k.diag[lo + j];
    for (int j = 0; j + 1 < width; ++j) {
        next[j + 1] += v[j] * k.up[lo + j];
        next[j] += v[j + 1] * k.down[lo + j + 1];
    }
    v.swap(next);
}

int sample_step_dense(const DenseKernel& k, int from, double u) {
    double acc = 0.0;
    for (int j = 0; j < k.n; ++j) {
        acc += k.kernel(from, j);
        if (u < acc) return j;
    }
    return k.n - 1;  // u landed in the rounding residue of the row sum
}

McEstimate finish_mc(long hits, int trials) {
    const double p = static_cast<double>(hits) / trials;
    return {p, std::sqrt(p * (1.0 - p) / trials), trials};
}

}  // namespace

double return_probability_exact(const DenseKernel& kernel, int site, int steps) {
    check_site(site, kernel.n);
    check_steps(steps);
    const int n = kernel.n;
    std::vector<double> v(n, 0.0), next(n);
    v[site] = 1.0;
    for (int s = 0; s < steps; ++s) {
        for (int j = 0; j < n; ++j) next[j] = 0.0;
        for (int i = 0; i < n; ++i) {
            const double vi = v[i];
            if (vi == 0.0) continue;
            for (int j = 0; j < n; ++j) next[j] += vi * kernel.kernel(i, j);
        }
        v.swap(next);
    }
    return v[site];
}

double return_probability_exact(const TridiagonalKernel& kernel, int site, int steps) {
    check_site(site, kernel.n);
    check_steps(steps);
    const int lo = std::max(0, site - steps);
    const int hi = std::min(kernel.n - 1, site + steps);
    std::vector<double> v(hi - lo + 1, 0.0), next(hi - lo + 1);
    v[site - lo] = 1.0;
    for (int s = 0; s < steps; ++s) chain_step(kernel, v, next, lo, hi);
    return v[site - lo];
}

McEstimate return_probability_mc(const DenseKernel& kernel, int site, int steps,
                                 int trials, SeededRng& rng) {
    check_site(site, kernel.n);
    check_steps(steps);
    if (trials < 1) throw std::invalid_argument("return_probability_mc: trials >= 1");
    long hits = 0;
    for (int t = 0; t < trials; ++t) {
        int pos = site;
        for (int s = 0; s < steps; ++s) {
            pos = sample_step_dense(kernel, pos, rng.next_double());
        }
        if (pos == site) ++hits;
    }
    return finish_mc(hits, trials);
}

McEstimate return_probability_mc(const TridiagonalKernel& kernel, int site, int steps,
                                 int trials, SeededRng& rng) {
    check_site(site, kernel.n);
    check_steps(steps);
    if (trials < 1) throw std::invalid_argument("return_probability_mc: trials >= 1");
    long hits = 0;
    for (int t = 0; t < trials; ++t) {
        int pos = site;
        for (int s = 0; s < steps; ++s) {
            const double u = rng.next_double();
            if (u < kernel.down[pos]) {
                --pos;
            } else if (u < kernel.down[pos] + kernel.diag[pos]) {
                // stay
            } else {
                ++pos;
            }
        }
        if (pos == site) ++hits;
    }
    return finish_mc(hits, trials);
}

namespace {

template <typename Kernel>
TraceIdentityReport trace_identity_impl(const Kernel& kernel, int steps) {
    const double lhs = esd_moment(esd(kernel_spectrum(kernel)), steps);
    double sum = 0.0;
    for (int i = 0; i < kernel.n; ++i) {
        sum += return_probability_exact(kernel, i, steps);
    }
    const double rhs = sum / kernel.n;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace

TraceIdentityReport trace_identity_check(const DenseKernel& kernel, int steps) {
    check_steps(steps);
    return trace_identity_impl(kernel, steps);
}

TraceIdentityReport trace_identity_check(const TridiagonalKernel& kernel, int steps) {
    check_steps(steps);
    return trace_identity_impl(kernel, steps);
}

double sum_return_probabilities(const DenseKernel& kernel, int steps) {
    check_steps(steps);
    const int n = kernel.n;
    if (steps == 0) return static_cast<double>(n);
    if (steps == 1) return kernel.kernel.trace();
    if (steps == 2) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) acc += kernel.kernel(i, j) * kernel.kernel(j, i);
        }
        return acc;
    }
    // Tr(K^steps) = sum_ij (K^a)_ij (K^b)_ji with a + b = steps
    const int a = steps / 2;
    Matrix ka = kernel.kernel;
    for (int s = 1; s < a; ++s) ka = matmul(ka, kernel.kernel);
    Matrix kb = steps % 2 == 0 ? ka : matmul(ka, kernel.kernel);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) acc += ka(i, j) * kb(j, i);
    }
    return acc;
}

double sum_return_probabilities(const TridiagonalKernel& kernel, int steps) {
    check_steps(steps);
    double acc = 0.0;
    for (int i = 0; i < kernel.n; ++i) {
        acc += return_probability_exact(kernel, i, steps);
    }
    return acc;
}

double ergodic_moment_estimate(const DistributionSpec& law, int steps, int n,
                               SeededRng& rng) {
    check_steps(steps);
    if (steps % 2 == 1) return 0.0;  // bipartite chain, zero diagonal
    const TridiagonalKernel kernel = build_chain_kernel_iid(n, law, rng);
    return sum_return_probabilities(kernel, steps) / n;
}

double return_normalization_check(const DenseKernel& kernel, int k) {
    if (k < 1) throw std::invalid_argument("return_normalization_check: need k >= 1");
    const double sum = sum_return_probabilities(kernel, k);
    return std::pow(static_cast<double>(kernel.n), -1.0 + 0.5 * k) * (sum - 1.0);
}

}  // namespace mspec
