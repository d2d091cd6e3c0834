#pragma once

namespace mspec::tol {

// Default numeric tolerances used by the library's validation checks.
// Every check that consumes one of these accepts an override parameter.

inline constexpr double kProbabilitySum = 1e-12;  // weight vectors sum to 1
inline constexpr double kSymmetry = 1e-12;        // dense eigensolver input
inline constexpr double kSimplexRow = 1e-12;      // Lambda_3 row validation

}  // namespace mspec::tol
