#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mspec/edge.hpp"

using namespace mspec;

namespace {

TridiagonalKernel mirrored(const TridiagonalKernel& k) {
    TridiagonalKernel m;
    m.n = k.n;
    m.down.resize(k.n);
    m.diag.resize(k.n);
    m.up.resize(k.n);
    for (int i = 0; i < k.n; ++i) {
        m.down[i] = k.up[k.n - 1 - i];
        m.diag[i] = k.diag[k.n - 1 - i];
        m.up[i] = k.down[k.n - 1 - i];
    }
    return m;
}

}  // namespace

TEST_CASE("dense edge scaling") {
    SeededRng rng(1);
    // pointmass weights: K is exactly rank one, lambda_2 = 0
    const auto flat = build_complete_kernel(50, DistributionSpec::point_mass(1.0), rng);
    const auto report = dense_edge_scaled(flat);
    CHECK(report.scaled_lambda2 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(report.scaled_lambda_min) <= 1e-7);

    CHECK_THROWS_AS(dense_edge_scaled(Spectrum{{1.0}}), std::invalid_argument);
}

TEST_CASE("chain gap bound: three-state hand computation") {
    SeededRng rng(2);
    const auto k3 = build_chain_kernel_iid(3, DistributionSpec::point_mass(0.5), rng);
    // rho = (1, 2, 1); B_2^+ = B_2^- = 1, bound = 1/4; gap = 1 - 0 = 1
    CHECK(chain_gap_lower_bound(k3, 2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(spectral_gap(kernel_spectrum(k3)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(chain_gap_lower_bound(k3, 1), std::invalid_argument);
    CHECK_THROWS_AS(chain_gap_lower_bound(k3, 3), std::invalid_argument);

    // the bound needs the zero-diagonal i.i.d. shape
    const auto lazy = build_chain_kernel_ergodic(
        3, {{0.25, 0.5, 0.25}, {0.25, 0.5, 0.25}, {0.25, 0.5, 0.25}});
    CHECK_THROWS_AS(chain_gap_lower_bound(lazy, 2), std::invalid_argument);
}

TEST_CASE("chain gap bound is a true lower bound on 50 random chains") {
    const DistributionSpec laws[] = {
        DistributionSpec::uniform(0.0, 1.0),
        DistributionSpec::beta(2.0, 2.0),
        DistributionSpec::uniform(0.0, 0.25),
        DistributionSpec::uniform_union(0.0, 0.25, 0.75, 1.0),
        DistributionSpec::uniform(0.75, 1.0),
    };
    int trial = 0;
    for (int rep = 0; rep < 5; ++rep) {
        for (const auto& law : laws) {
            for (int n : {50, 200}) {
                SeededRng rng = SeededRng(300).substream(trial++);
                const auto kernel = build_chain_kernel_iid(n, law, rng);
                const double gap = spectral_gap(kernel_spectrum(kernel));
                const double bound = chain_gap_lower_bound(kernel, 2);
                CHECK(bound <= gap + 1e-9);
                const double best = chain_gap_lower_bound_best(kernel);
                CHECK(best <= gap + 1e-9);
                CHECK(best >= bound - 1e-15);
            }
        }
    }
}

TEST_CASE("mirror symmetry leaves the bound invariant") {
    const auto law = DistributionSpec::uniform(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        SeededRng rng = SeededRng(400).substream(trial);
        const auto kernel = build_chain_kernel_iid(60, law, rng);
        const auto flipped = mirrored(kernel);
        const int n = kernel.n;
        for (int k : {2, 10, 30, n - 1}) {
            // site relabeling i -> n+1-i swaps B^+ and B^-; the bound at k
            // maps to the bound at n+1-k
            CHECK(chain_gap_lower_bound(kernel, k) ==
                  doctest::Approx(chain_gap_lower_bound(flipped, n + 1 - k))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("laws supported on [0, 1/4] keep the gap above 1/12") {
    const auto law = DistributionSpec::uniform(0.0, 0.25);
    for (int n : {500, 2000}) {
        SeededRng rng = SeededRng(500).substream(n);
        const auto kernel = build_chain_kernel_iid(n, law, rng);
        // B_2^- = 1 and B_2^+ <= (1-t)/(1-2t)^2 = 3 for t = 1/4
        const double bound = chain_gap_lower_bound(kernel, 2);
        CHECK(bound >= 1.0 / 12.0 - 1e-12);
        const double lambda2 = kernel_spectrum(kernel).second_largest();
        CHECK(lambda2 <= 1.0 - 1.0 / 12.0 + 1e-12);
    }
}
