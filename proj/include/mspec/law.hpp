#pragma once

#include <memory>
#include <string>
#include <variant>

#include "mspec/rng.hpp"

namespace mspec {

// Weight/environment laws. All supported laws have support in [0, inf);
// the chain environment additionally requires support in [0, 1].
struct PointMass {
    double c;
};

struct Uniform {
    double a, b;  // uniform on [a, b], 0 <= a < b
};

// Uniform on [a,b] u [c,d] with density proportional to segment length;
// covers laws like "uniform on [0,t] u [1-t,1]".
struct UniformUnion {
    double a, b, c, d;  // 0 <= a < b <= c < d
};

struct Beta {
    double alpha, beta;  // alpha, beta > 0; support (0, 1)
};

struct DistributionSpec;

// P(X = 0) = 1 - p, otherwise X ~ inner. p in (0, 1].
struct AtomZeroMixture {
    double p;
    std::shared_ptr<const DistributionSpec> inner;
};

struct DistributionSpec {
    std::variant<PointMass, Uniform, UniformUnion, Beta, AtomZeroMixture> law;

    static DistributionSpec point_mass(double c);
    static DistributionSpec uniform(double a, double b);
    static DistributionSpec uniform_union(double a, double b, double c, double d);
    static DistributionSpec beta(double alpha, double beta);
    static DistributionSpec atom_zero_mixture(double p, DistributionSpec inner);
};

// Throws std::invalid_argument when parameters violate the support
// constraints above.
void validate(const DistributionSpec& law);

bool support_in_unit_interval(const DistributionSpec& law);

// One draw from the law; the stream is advanced deterministically, so a
// fixed seed reproduces the sample sequence bit for bit.
double sample_weight(const DistributionSpec& law, SeededRng& rng);

// Raw moment E[X^order], exact closed form for every variant.
double law_moment(const DistributionSpec& law, int order);

double law_mean(const DistributionSpec& law);
double law_variance(const DistributionSpec& law);

// E[V^m (1-V)^n] for a law on [0,1]; closed form for point masses, Beta
// and uniform-on-[0,1], adaptive Gauss-Legendre quadrature otherwise
// (exact for these polynomial integrands). Throws std::domain_error when
// the support is not contained in [0,1].
double beta_moment(const DistributionSpec& law, int m, int n);

// CLI syntax: pointmass:c | uniform:a,b | uniform2:a,b,c,d |
// beta:alpha,beta | atom0:p,<inner>
DistributionSpec parse_law(const std::string& text);
std::string law_to_string(const DistributionSpec& law);

}  // namespace mspec
