#include "mspec/pathcomb.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace mspec {

namespace {

void dfs_paths(int k, std::vector<int>& gamma,
               const std::function<void(const LoopPath&)>& visit) {
    const int len = 2 * k;
    const int step = static_cast<int>(gamma.size()) - 1;
    if (step == len) {
        if (gamma.back() == 0) visit(LoopPath{gamma});
        return;
    }
    const int pos = gamma.back();
    const int remaining = len - step;
    // prune branches that cannot return to 0 in the remaining steps
    if (std::abs(pos) > remaining) return;
    for (const int d : {-1, +1}) {  // -1 first keeps lexicographic order
        if (std::abs(pos + d) > remaining - 1) continue;
        gamma.push_back(pos + d);
        dfs_paths(k, gamma, visit);
        gamma.pop_back();
    }
}

}  // namespace

void for_each_loop_path(int k, const std::function<void(const LoopPath&)>& visit) {
    if (k < 1) throw std::invalid_argument("loop paths: need k >= 1");
    if (k > kLoopPathCap)
        throw std::invalid_argument("loop paths: k capped at " +
                                    std::to_string(kLoopPathCap));
    std::vector<int> gamma;
    gamma.reserve(2 * k + 1);
    gamma.push_back(0);
    dfs_paths(k, gamma, visit);
}

std::vector<LoopPath> enumerate_loop_paths(int k) {
    std::vector<LoopPath> out;
    out.reserve(binomial(2 * k, k));
    for_each_loop_path(k, [&out](const LoopPath& p) { out.push_back(p); });
    return out;
}

std::map<int, int> crossing_counts(const LoopPath& path) {
    if (path.positions.size() < 2 || path.positions.front() != 0 ||
        path.positions.back() != 0)
        throw std::invalid_argument("crossing_counts: not a loop path");
    std::map<int, int> counts;
    for (std::size_t l = 0; l + 1 < path.positions.size(); ++l) {
        const int d = path.positions[l + 1] - path.positions[l];
        if (d != 1 && d != -1)
            throw std::invalid_argument("crossing_counts: steps must be unit");
        if (d == 1) ++counts[path.positions[l]];
    }
    return counts;
}

namespace {

// Exponent pairs (N(i), N(i-1)) for the touched level range of a path.
// Returns the lowest level with a nonzero pair.
int exponent_pairs(const LoopPath& path, std::vector<std::pair<int, int>>& pairs) {
    int lo = 0, hi = 0;
    for (int pos : path.positions) {
        lo = std::min(lo, pos);
        hi = std::max(hi, pos);
    }
    // up-crossings happen at levels lo..hi-1; N(i) or N(i-1) is nonzero
    // for i in lo..hi
    const int width = hi - lo + 1;
    std::vector<int> up(static_cast<std::size_t>(width), 0);
    for (std::size_t l = 0; l + 1 < path.positions.size(); ++l) {
        if (path.positions[l + 1] > path.positions[l]) ++up[path.positions[l] - lo];
    }
    pairs.resize(width);
    for (int i = 0; i < width; ++i) {
        pairs[i] = {up[i], i > 0 ? up[i - 1] : 0};
    }
    return lo;
}

}  // namespace

double chain_limit_moment_joint(
    int k, const std::function<double(int, const std::vector<std::pair<int, int>>&)>&
               joint_moment) {
    double total = 0.0;
    std::vector<std::pair<int, int>> pairs;
    for_each_loop_path(k, [&](const LoopPath& path) {
        const int base = exponent_pairs(path, pairs);
        total += joint_moment(base, pairs);
    });
    return total;
}

double chain_limit_moment(const DistributionSpec& law, int k) {
    if (!support_in_unit_interval(law))
        throw std::domain_error("chain_limit_moment: law support must lie in [0, 1]");
    // beta moments repeat across paths; m + n <= 2k keeps the table small
    std::vector<double> table(static_cast<std::size_t>(2 * k + 1) * (2 * k + 1), -1.0);
    auto memo_beta = [&](int m, int n) {
        double& slot = table[static_cast<std::size_t>(m) * (2 * k + 1) + n];
        if (slot < 0.0) slot = beta_moment(law, m, n);
        return slot;
    };
    return chain_limit_moment_joint(
        k, [&](int, const std::vector<std::pair<int, int>>& pairs) {
            double prod = 1.0;
            for (const auto& [m, n] : pairs) prod *= memo_beta(m, n);
            return prod;
        });
}

void write_moment_table_csv(const DistributionSpec& law, int k_max, std::ostream& out) {
    out << "k,moment\n";
    char buf[40];
    for (int k = 1; k <= k_max; ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", chain_limit_moment(law, k));
        out << k << ',' << buf << '\n';
    }
}

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial: bad arguments");
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (int j = 1; j <= k; ++j) {
        acc = acc * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("binomial: result exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t catalan(int r) {
    if (r < 0) throw std::invalid_argument("catalan: need r >= 0");
    if (r > 30) throw std::overflow_error("catalan: r capped at 30 for 64-bit exactness");
    return binomial(2 * r, r) / static_cast<std::uint64_t>(r + 1);
}

}  // namespace mspec
