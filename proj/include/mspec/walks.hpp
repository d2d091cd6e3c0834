#pragma once

#include "mspec/kernels.hpp"
#include "mspec/rng.hpp"

namespace mspec {

struct McEstimate {
    double estimate;
    double std_error;  // sqrt(p(1-p)/trials)
    int trials;
};

struct TraceIdentityReport {
    double lhs;   // moment of the ESD, from the eigenvalues
    double rhs;   // (1/n) sum_i r_l(i), from exact propagation
    double diff;  // |lhs - rhs|
};

// (K^steps)_{site,site} by pushing the indicator vector through the
// kernel; K^steps is never materialized. Sites are 0-based.
double return_probability_exact(const DenseKernel& kernel, int site, int steps);
double return_probability_exact(const TridiagonalKernel& kernel, int site, int steps);

McEstimate return_probability_mc(const DenseKernel& kernel, int site, int steps,
                                 int trials, SeededRng& rng);
McEstimate return_probability_mc(const TridiagonalKernel& kernel, int site, int steps,
                                 int trials, SeededRng& rng);

// Both sides of (1/n) Tr(K^l) = l-th ESD moment, computed independently.
TraceIdentityReport trace_identity_check(const DenseKernel& kernel, int steps);
TraceIdentityReport trace_identity_check(const TridiagonalKernel& kernel, int steps);

// sum_i r_steps(i) = Tr(K^steps) via matrix products (dense) or local
// propagation (chain); no eigenvalues involved.
double sum_return_probabilities(const DenseKernel& kernel, int steps);
double sum_return_probabilities(const TridiagonalKernel& kernel, int steps);

// Draws one chain environment of size n and returns (1/n) sum_i r_l(i),
// the ergodic-average estimate of the limit-law moment of order l. Odd
// orders are exactly zero.
double ergodic_moment_estimate(const DistributionSpec& law, int steps, int n,
                               SeededRng& rng);

// n^{-1+k/2} (sum_i r_k(i) - 1); for even k this approaches
// sigma^k * Catalan(k/2) on the complete-graph model.
double return_normalization_check(const DenseKernel& kernel, int k);

}  // namespace mspec
