#pragma once

#include <iosfwd>
#include <vector>

#include "mspec/law.hpp"
#include "mspec/matrix.hpp"
#include "mspec/rng.hpp"
#include "mspec/tolerances.hpp"

namespace mspec {

// Dense storage is O(n^2); larger sizes belong to the tridiagonal model.
inline constexpr int kDenseDimCap = 4096;

// Nonnegative weights summing to one.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> weights,
                               double sum_tol = tol::kProbabilitySum);

    int dim() const { return static_cast<int>(weights_.size()); }
    double operator[](int i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

// (1/2) sum_k |mu_k - nu_k|
double tv_distance(const ProbabilityVector& mu, const ProbabilityVector& nu);

ProbabilityVector uniform_probability(int n);

// Complete-graph random walk kernel K_{ij} = U_{ij} / rho_i built from a
// symmetric i.i.d. weight matrix U (loops included). Rows with rho_i = 0
// become unit vectors at i (isolated-vertex convention).
struct DenseKernel {
    int n = 0;
    std::vector<double> upper;     // U_{ij} for i <= j, packed row-wise
    std::vector<double> row_sums;  // rho_i = sum_j U_{ij}
    Matrix kernel;                 // K

    double weight(int i, int j) const {
        if (i > j) std::swap(i, j);
        return upper[static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + j];
    }
};

// Birth-and-death kernel with rows (c_i, a_i, b_i); c_1 = b_n = 0,
// b_i > 0 and c_{i+1} > 0 for i < n.
struct TridiagonalKernel {
    int n = 0;
    std::vector<double> down;  // c_i
    std::vector<double> diag;  // a_i
    std::vector<double> up;    // b_i
};

// One row of a chain environment, an element of the simplex Lambda_3.
struct Lambda3 {
    double c, a, b;
};

// Reflections used for the boundary rows: v_- folds the up-probability
// into the down one, v_+ the reverse.
Lambda3 reflect_minus(const Lambda3& v);
Lambda3 reflect_plus(const Lambda3& v);

enum class BoundaryCondition { kReflect };

DenseKernel build_complete_kernel(int n, const DistributionSpec& law, SeededRng& rng);

// Interior rows (1-V_i, 0, V_i) with V_i i.i.d. from a law on [0,1];
// boundary rows forced to full reflection (b_1 = c_n = 1).
TridiagonalKernel build_chain_kernel_iid(int n, const DistributionSpec& law,
                                         SeededRng& rng);

// Rows 2..n-1 from the field, row 1 = field[0]_+, row n = field[n-1]_-.
TridiagonalKernel build_chain_kernel_ergodic(
    int n, const std::vector<Lambda3>& field,
    BoundaryCondition boundary = BoundaryCondition::kReflect,
    double row_tol = tol::kSimplexRow);

// Normalized invariant measure. Dense: rho_i / sum rho. Chain: the
// product formula rho_i = prod_{k<i} b_k / c_{k+1}, accumulated in log
// space so Sinai-type environments cannot overflow.
ProbabilityVector invariant_measure(const DenseKernel& kernel);
ProbabilityVector invariant_measure(const TridiagonalKernel& kernel);

struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // size n-1
};

// Symmetric conjugate S = D^{1/2} K D^{-1/2} with D = diag(rho); shares
// the spectrum of K. Requires every rho_i > 0.
Matrix symmetrize(const DenseKernel& kernel);
SymmetricTridiagonal symmetrize(const TridiagonalKernel& kernel);

// CSV of nonzero triples (i, j, K_ij), 1-based indices.
void write_kernel_csv(const DenseKernel& kernel, std::ostream& out);
// CSV rows (i, c_i, a_i, b_i), 1-based indices.
void write_kernel_csv(const TridiagonalKernel& kernel, std::ostream& out);

}  // namespace mspec
