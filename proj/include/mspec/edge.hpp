#pragma once

#include "mspec/kernels.hpp"
#include "mspec/spectra.hpp"

namespace mspec {

struct DenseEdgeReport {
    int n;
    double scaled_lambda2;    // sqrt(n) * lambda_2
    double scaled_lambda_min; // sqrt(n) * lambda_n
};

DenseEdgeReport dense_edge_scaled(const DenseKernel& kernel);
// Overload for a spectrum that has already been computed.
DenseEdgeReport dense_edge_scaled(const Spectrum& spectrum);

// Weighted-Hardy lower bound on the chain spectral gap:
// 1 - lambda_2 >= 1 / (4 max(B_k^+, B_k^-)), valid for 2 <= k <= n-1 on
// the zero-diagonal i.i.d. chain model. All sums and the invariant
// products are accumulated in log space; environments in the Sinai
// regime push the products past 1e±300.
double chain_gap_lower_bound(const TridiagonalKernel& kernel, int k = 2);

// Largest bound over all admissible k.
double chain_gap_lower_bound_best(const TridiagonalKernel& kernel);

}  // namespace mspec
