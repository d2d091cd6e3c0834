#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "mspec/law.hpp"

namespace mspec {

// |D_12| = binom(24, 12) ~ 2.7e6 paths; enumeration above this is refused.
inline constexpr int kLoopPathCap = 12;

// Unit-step integer path of length 2k starting and ending at 0.
struct LoopPath {
    std::vector<int> positions;  // gamma_0 .. gamma_{2k}
};

// All loop paths of length 2k, lexicographically ordered by the position
// sequence. Throws std::invalid_argument above the cap.
std::vector<LoopPath> enumerate_loop_paths(int k);

// Streaming enumeration in the same order, without materializing D_k.
void for_each_loop_path(int k, const std::function<void(const LoopPath&)>& visit);

// Up-crossing profile: level i -> number of steps (i, i+1) in the path.
std::map<int, int> crossing_counts(const LoopPath& path);

// 2k-th moment of the chain limit law for an i.i.d. environment on [0,1]:
// sum over loop paths of prod_i E[V^{N(i)} (1-V)^{N(i-1)}]. Odd moments
// of the limit law vanish by symmetry.
double chain_limit_moment(const DistributionSpec& law, int k);

// Stationary-ergodic hook. For each path the functional receives the
// lowest touched level `base` and the exponent pairs (m_j, n_j) for
// levels base, base+1, ... and must return the joint moment
// E[prod_j V_{base+j}^{m_j} (1-V_{base+j})^{n_j}]. The i.i.d. case
// factorizes into beta moments; no other specialization is exercised.
double chain_limit_moment_joint(
    int k, const std::function<double(int base, const std::vector<std::pair<int, int>>&)>&
               joint_moment);

// CSV rows (k, moment) with the 2k-th limit moments for k = 1..k_max.
void write_moment_table_csv(const DistributionSpec& law, int k_max, std::ostream& out);

// Exact Catalan number, r <= 30 (fits in 64 bits).
std::uint64_t catalan(int r);

// Exact binomial coefficient with overflow guard.
std::uint64_t binomial(int n, int k);

}  // namespace mspec
