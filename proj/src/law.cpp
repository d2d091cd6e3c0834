#include "mspec/law.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace mspec {

namespace {

// 20-node Gauss-Legendre abscissas/weights on [-1, 1] (positive half).
constexpr int kGlHalf = 10;
constexpr double kGlNode[kGlHalf] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154196,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
constexpr double kGlWeight[kGlHalf] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int i = 0; i < kGlHalf; ++i) {
        acc += kGlWeight[i] * (f(mid + half * kGlNode[i]) + f(mid - half * kGlNode[i]));
    }
    return acc * half;
}

double adaptive_gl(const std::function<double(double)>& f, double lo, double hi,
                   double whole, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left = gauss_legendre(f, lo, mid);
    const double right = gauss_legendre(f, mid, hi);
    const double split = left + right;
    if (depth >= 24 ||
        std::abs(split - whole) <= std::max(1e-15, 1e-13 * std::abs(split))) {
        return split;
    }
    return adaptive_gl(f, lo, mid, left, depth + 1) +
           adaptive_gl(f, mid, hi, right, depth + 1);
}

double integrate(const std::function<double(double)>& f, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return adaptive_gl(f, lo, hi, gauss_legendre(f, lo, hi), 0);
}

double normal_sample(SeededRng& rng) {
    // Marsaglia polar method; one variate per acceptance.
    for (;;) {
        const double u = 2.0 * rng.next_double() - 1.0;
        const double v = 2.0 * rng.next_double() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

double gamma_sample(double shape, SeededRng& rng) {
    if (shape < 1.0) {
        const double g = gamma_sample(shape + 1.0, rng);
        return g * std::pow(rng.next_double_pos(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = normal_sample(rng);
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.next_double_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

// Raw moment of a uniform law on [x, y]:
// (y^{k+1} - x^{k+1}) / ((k+1)(y-x)) = sum_{j<=k} y^j x^{k-j} / (k+1),
// the factored form avoids the cancellation for x close to y.
double uniform_raw_moment(double x, double y, int order) {
    double acc = 0.0;
    for (int j = 0; j <= order; ++j) {
        acc += std::pow(y, j) * std::pow(x, order - j);
    }
    return acc / (order + 1);
}

double segment_length(const UniformUnion& u) {
    return (u.b - u.a) + (u.d - u.c);
}

}  // namespace

DistributionSpec DistributionSpec::point_mass(double c) {
    DistributionSpec s{PointMass{c}};
    validate(s);
    return s;
}

DistributionSpec DistributionSpec::uniform(double a, double b) {
    DistributionSpec s{Uniform{a, b}};
    validate(s);
    return s;
}

DistributionSpec DistributionSpec::uniform_union(double a, double b, double c, double d) {
    DistributionSpec s{UniformUnion{a, b, c, d}};
    validate(s);
    return s;
}

DistributionSpec DistributionSpec::beta(double alpha, double beta) {
    DistributionSpec s{Beta{alpha, beta}};
    validate(s);
    return s;
}

DistributionSpec DistributionSpec::atom_zero_mixture(double p, DistributionSpec inner) {
    DistributionSpec s{AtomZeroMixture{
        p, std::make_shared<const DistributionSpec>(std::move(inner))}};
    validate(s);
    return s;
}

void validate(const DistributionSpec& law) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                if (!(v.c >= 0.0) || !std::isfinite(v.c))
                    throw std::invalid_argument("pointmass: c must be finite and >= 0");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (!(v.a >= 0.0) || !(v.a < v.b) || !std::isfinite(v.b))
                    throw std::invalid_argument("uniform: need 0 <= a < b");
            } else if constexpr (std::is_same_v<T, UniformUnion>) {
                if (!(v.a >= 0.0) || !(v.a < v.b) || !(v.b <= v.c) || !(v.c < v.d) ||
                    !std::isfinite(v.d))
                    throw std::invalid_argument("uniform2: need 0 <= a < b <= c < d");
            } else if constexpr (std::is_same_v<T, Beta>) {
                if (!(v.alpha > 0.0) || !(v.beta > 0.0))
                    throw std::invalid_argument("beta: need alpha > 0 and beta > 0");
            } else if constexpr (std::is_same_v<T, AtomZeroMixture>) {
                if (!(v.p > 0.0) || !(v.p <= 1.0))
                    throw std::invalid_argument("atom0: need p in (0, 1]");
                if (!v.inner) throw std::invalid_argument("atom0: missing inner law");
                validate(*v.inner);
            }
        },
        law.law);
}

bool support_in_unit_interval(const DistributionSpec& law) {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return v.c <= 1.0;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return v.b <= 1.0;
            } else if constexpr (std::is_same_v<T, UniformUnion>) {
                return v.d <= 1.0;
            } else if constexpr (std::is_same_v<T, Beta>) {
                return true;
            } else {
                return support_in_unit_interval(*v.inner);
            }
        },
        law.law);
}

double sample_weight(const DistributionSpec& law, SeededRng& rng) {
    return std::visit(
        [&rng](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return v.c;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return v.a + (v.b - v.a) * rng.next_double();
            } else if constexpr (std::is_same_v<T, UniformUnion>) {
                const double len1 = v.b - v.a;
                const double x = rng.next_double() * segment_length(v);
                return x < len1 ? v.a + x : v.c + (x - len1);
            } else if constexpr (std::is_same_v<T, Beta>) {
                const double x = gamma_sample(v.alpha, rng);
                const double y = gamma_sample(v.beta, rng);
                return x / (x + y);
            } else {
                return rng.next_double() < 1.0 - v.p ? 0.0
                                                     : sample_weight(*v.inner, rng);
            }
        },
        law.law);
}

double law_moment(const DistributionSpec& law, int order) {
    if (order < 0) throw std::invalid_argument("law_moment: order must be >= 0");
    if (order == 0) return 1.0;
    return std::visit(
        [order](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return std::pow(v.c, order);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return uniform_raw_moment(v.a, v.b, order);
            } else if constexpr (std::is_same_v<T, UniformUnion>) {
                const double len = segment_length(v);
                return ((v.b - v.a) * uniform_raw_moment(v.a, v.b, order) +
                        (v.d - v.c) * uniform_raw_moment(v.c, v.d, order)) /
                       len;
            } else if constexpr (std::is_same_v<T, Beta>) {
                double m = 1.0;
                for (int j = 0; j < order; ++j) {
                    m *= (v.alpha + j) / (v.alpha + v.beta + j);
                }
                return m;
            } else {
                return v.p * law_moment(*v.inner, order);
            }
        },
        law.law);
}

double law_mean(const DistributionSpec& law) { return law_moment(law, 1); }

double law_variance(const DistributionSpec& law) {
    const double m1 = law_moment(law, 1);
    return law_moment(law, 2) - m1 * m1;
}

double beta_moment(const DistributionSpec& law, int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("beta_moment: need m, n >= 0");
    if (!support_in_unit_interval(law))
        throw std::domain_error("beta_moment: law support must lie in [0, 1]");
    if (m == 0 && n == 0) return 1.0;
    return std::visit(
        [m, n](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return std::pow(v.c, m) * std::pow(1.0 - v.c, n);
            } else if constexpr (std::is_same_v<T, Beta>) {
                // B(alpha+m, beta+n) / B(alpha, beta) via rising factorials
                double r = 1.0;
                for (int j = 0; j < m; ++j) r *= v.alpha + j;
                for (int j = 0; j < n; ++j) r *= v.beta + j;
                for (int j = 0; j < m + n; ++j) r /= v.alpha + v.beta + j;
                return r;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (v.a == 0.0 && v.b == 1.0) {
                    // m! n! / (m+n+1)!
                    double r = 1.0;
                    for (int j = 1; j <= n; ++j) r *= j / static_cast<double>(m + j);
                    return r / (m + n + 1);
                }
                const double dens = 1.0 / (v.b - v.a);
                return integrate(
                    [m, n, dens](double u) {
                        return dens * std::pow(u, m) * std::pow(1.0 - u, n);
                    },
                    v.a, v.b);
            } else if constexpr (std::is_same_v<T, UniformUnion>) {
                const double dens = 1.0 / segment_length(v);
                auto f = [m, n, dens](double u) {
                    return dens * std::pow(u, m) * std::pow(1.0 - u, n);
                };
                return integrate(f, v.a, v.b) + integrate(f, v.c, v.d);
            } else {
                // the atom at 0 contributes (1-p) * 0^m * 1^n
                const double atom = m == 0 ? 1.0 - v.p : 0.0;
                return atom + v.p * beta_moment(*v.inner, m, n);
            }
        },
        law.law);
}

namespace {

std::vector<double> parse_numbers(const std::string& text, std::size_t expect,
                                  const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(piece, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("law: bad number '" + piece + "' in " + what);
        }
        if (used != piece.size())
            throw std::invalid_argument("law: bad number '" + piece + "' in " + what);
        out.push_back(value);
    }
    if (out.size() != expect)
        throw std::invalid_argument("law: " + what + " expects " +
                                    std::to_string(expect) + " parameters");
    return out;
}

}  // namespace

DistributionSpec parse_law(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("law: expected '<name>:<params>', got '" + text + "'");
    const std::string name = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (name == "pointmass") {
        return DistributionSpec::point_mass(parse_numbers(rest, 1, name)[0]);
    }
    if (name == "uniform") {
        const auto p = parse_numbers(rest, 2, name);
        return DistributionSpec::uniform(p[0], p[1]);
    }
    if (name == "uniform2") {
        const auto p = parse_numbers(rest, 4, name);
        return DistributionSpec::uniform_union(p[0], p[1], p[2], p[3]);
    }
    if (name == "beta") {
        const auto p = parse_numbers(rest, 2, name);
        return DistributionSpec::beta(p[0], p[1]);
    }
    if (name == "atom0") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("law: atom0 expects 'atom0:p,<inner>'");
        const auto p = parse_numbers(rest.substr(0, comma), 1, name);
        return DistributionSpec::atom_zero_mixture(p[0], parse_law(rest.substr(comma + 1)));
    }
    throw std::invalid_argument("law: unknown law '" + name + "'");
}

std::string law_to_string(const DistributionSpec& law) {
    std::ostringstream out;
    out.precision(17);
    std::visit(
        [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                out << "pointmass:" << v.c;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                out << "uniform:" << v.a << ',' << v.b;
            } else if constexpr (std::is_same_v<T, UniformUnion>) {
                out << "uniform2:" << v.a << ',' << v.b << ',' << v.c << ',' << v.d;
            } else if constexpr (std::is_same_v<T, Beta>) {
                out << "beta:" << v.alpha << ',' << v.beta;
            } else {
                out << "atom0:" << v.p << ',' << law_to_string(*v.inner);
            }
        },
        law.law);
    return out.str();
}

}  // namespace mspec
