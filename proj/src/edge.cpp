#include "mspec/edge.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mspec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow
double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void require_iid_chain(const TridiagonalKernel& kernel) {
    for (double a : kernel.diag) {
        if (a != 0.0)
            throw std::invalid_argument(
                "chain_gap_lower_bound: kernel must have zero diagonal");
    }
    if (kernel.up[0] != 1.0 || kernel.down[kernel.n - 1] != 1.0)
        throw std::invalid_argument(
            "chain_gap_lower_bound: kernel must have reflecting boundary rows");
}

}  // namespace

DenseEdgeReport dense_edge_scaled(const Spectrum& spectrum) {
    const int n = spectrum.dim();
    if (n < 2) throw std::invalid_argument("dense_edge_scaled: need n >= 2");
    const double root = std::sqrt(static_cast<double>(n));
    return {n, root * spectrum.second_largest(), root * spectrum.smallest()};
}

DenseEdgeReport dense_edge_scaled(const DenseKernel& kernel) {
    return dense_edge_scaled(kernel_spectrum(kernel));
}

double chain_gap_lower_bound(const TridiagonalKernel& kernel, int k) {
    const int n = kernel.n;
    if (k < 2 || k > n - 1)
        throw std::invalid_argument("chain_gap_lower_bound: need 2 <= k <= n-1");
    require_iid_chain(kernel);

    // rho_1 = 1, rho_{j+1}/rho_j = b_j / c_{j+1}; everything 1-based in
    // the comments, 0-based in the arrays.
    std::vector<double> log_rho(n, 0.0);
    for (int j = 0; j + 1 < n; ++j) {
        log_rho[j + 1] = log_rho[j] + std::log(kernel.up[j]) - std::log(kernel.down[j + 1]);
    }

    // suffix[i] = log sum_{j >= i} rho_j, prefix[i] = log sum_{j <= i} rho_j
    std::vector<double> suffix(n), prefix(n);
    suffix[n - 1] = log_rho[n - 1];
    for (int i = n - 2; i >= 0; --i) suffix[i] = log_add(suffix[i + 1], log_rho[i]);
    prefix[0] = log_rho[0];
    for (int i = 1; i < n; ++i) prefix[i] = log_add(prefix[i - 1], log_rho[i]);

    // B_k^+ = max_{i > k} [ sum_{j=k+1..i} 1/(rho_j c_j) ] * [ sum_{j>=i} rho_j ]
    // (1 - V_j = c_j for all j >= 2, including the boundary convention)
    double log_bplus = kNegInf;
    double inner = kNegInf;
    for (int i = k; i < n; ++i) {  // i is the 0-based site k+1..n
        inner = log_add(inner, -log_rho[i] - std::log(kernel.down[i]));
        log_bplus = std::max(log_bplus, inner + suffix[i]);
    }

    // B_k^- = max_{i < k} [ sum_{j=i..k-1} 1/(rho_j V_j) ] * [ sum_{j<=i} rho_j ]
    // (V_j = b_j for all j <= n-1, including V_1 = 1)
    double log_bminus = kNegInf;
    inner = kNegInf;
    for (int i = k - 2; i >= 0; --i) {  // i is the 0-based site k-1..1
        inner = log_add(inner, -log_rho[i] - std::log(kernel.up[i]));
        log_bminus = std::max(log_bminus, inner + prefix[i]);
    }

    const double log_bound = -(std::log(4.0) + std::max(log_bplus, log_bminus));
    return std::exp(log_bound);
}

double chain_gap_lower_bound_best(const TridiagonalKernel& kernel) {
    double best = 0.0;
    for (int k = 2; k <= kernel.n - 1; ++k) {
        best = std::max(best, chain_gap_lower_bound(kernel, k));
    }
    return best;
}

}  // namespace mspec
