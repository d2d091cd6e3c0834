#include "mspec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mspec/edge.hpp"
#include "mspec/kernels.hpp"
#include "mspec/limitlaws.hpp"
#include "mspec/pathcomb.hpp"
#include "mspec/spectra.hpp"
#include "mspec/walks.hpp"

namespace mspec {

namespace {

constexpr int kMomentMaxOrder = 12;  // moments experiment reports orders <= 12
constexpr int kTraceMaxSteps = 6;
constexpr unsigned kMaxWorkers = 4;

// Effective noise scale of the law after the mean-1 normalization the
// kernel is invariant under: std(law) / mean(law).
double effective_sigma(const DistributionSpec& law) {
    const double mean = law_mean(law);
    if (!(mean > 0.0))
        throw std::invalid_argument("experiment: law must have positive mean");
    return std::sqrt(law_variance(law)) / mean;
}

// Kernel construction consumes substream(n) of the seed so the stream is
// fixed per (n, seed) pair regardless of the experiment.
SeededRng pair_rng(std::uint64_t seed, int n) { return SeededRng(seed).substream(n); }

std::string pair_name(const std::string& stem, int n, std::uint64_t seed) {
    return stem + "_n" + std::to_string(n) + "_seed" + std::to_string(seed) + ".csv";
}

// Everything one (n, seed) task produces: complete per-pair files plus
// rows destined for the experiment's merged CSV.
struct PairOutput {
    std::vector<std::pair<std::string, std::string>> files;  // name -> content
    std::string merged_rows;
};

struct Pair {
    int n;
    std::uint64_t seed;
};

// Pairs run concurrently on a small pool; results are indexed by pair so
// the single-threaded reducer below writes them in a fixed order.
template <typename Task>
std::vector<PairOutput> run_pairs(const std::vector<Pair>& pairs, const Task& task) {
    std::vector<PairOutput> results(pairs.size());
    const unsigned workers = std::min<unsigned>(
        {kMaxWorkers, std::max(1u, std::thread::hardware_concurrency()),
         static_cast<unsigned>(pairs.size())});
    if (workers <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i) results[i] = task(pairs[i]);
        return results;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= pairs.size()) return;
                try {
                    results[i] = task(pairs[i]);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

std::vector<Pair> config_pairs(const ExperimentConfig& config) {
    std::vector<Pair> pairs;
    for (int n : config.sizes) {
        for (std::uint64_t seed : config.seeds) pairs.push_back({n, seed});
    }
    return pairs;
}

struct HistogramRow {
    double left, right;
    long count;
    double density;
};

std::vector<HistogramRow> make_histogram(const std::vector<double>& values, double lo,
                                         double hi, int bins) {
    const double width = (hi - lo) / bins;
    // eigenvalues sitting on the range edge up to solver accuracy belong
    // to the edge bins; anything further out is dropped
    const double slack = 1e-9 * (hi - lo);
    std::vector<long> counts(bins, 0);
    for (double x : values) {
        if (x < lo - slack || x > hi + slack) continue;
        int idx = static_cast<int>((std::clamp(x, lo, hi) - lo) / width);
        if (idx == bins) idx = bins - 1;
        ++counts[idx];
    }
    std::vector<HistogramRow> rows(bins);
    const double denom = static_cast<double>(values.size()) * width;
    for (int b = 0; b < bins; ++b) {
        rows[b] = {lo + b * width, lo + (b + 1) * width, counts[b], counts[b] / denom};
    }
    return rows;
}

std::string spectrum_text(const Spectrum& spectrum) {
    std::string out;
    for (double v : spectrum.values) {
        out += format17(v);
        out += '\n';
    }
    return out;
}

std::string histogram_text(const std::vector<HistogramRow>& rows) {
    std::string out = "bin_left,bin_right,count,density\n";
    for (const auto& r : rows) {
        out += format17(r.left) + ',' + format17(r.right) + ',' +
               std::to_string(r.count) + ',' + format17(r.density) + '\n';
    }
    return out;
}

PairOutput spectrum_task(const ExperimentConfig& config, const DistributionSpec& law,
                         Pair p) {
    PairOutput out;
    SeededRng rng = pair_rng(p.seed, p.n);
    if (config.model == Model::kComplete) {
        const DenseKernel kernel = build_complete_kernel(p.n, law, rng);
        out.files.emplace_back(pair_name("spectrum_complete", p.n, p.seed),
                               spectrum_text(kernel_spectrum(kernel)));
        if (config.export_kernel) {
            std::ostringstream csv;
            write_kernel_csv(kernel, csv);
            out.files.emplace_back(pair_name("kernel_complete", p.n, p.seed), csv.str());
        }
    } else {
        const TridiagonalKernel kernel = build_chain_kernel_iid(p.n, law, rng);
        out.files.emplace_back(pair_name("spectrum_chain", p.n, p.seed),
                               spectrum_text(kernel_spectrum(kernel)));
        if (config.export_kernel) {
            std::ostringstream csv;
            write_kernel_csv(kernel, csv);
            out.files.emplace_back(pair_name("kernel_chain", p.n, p.seed), csv.str());
        }
    }
    return out;
}

PairOutput hist_task(const ExperimentConfig& config, const DistributionSpec& law, Pair p) {
    PairOutput out;
    SeededRng rng = pair_rng(p.seed, p.n);
    if (config.model == Model::kChain) {
        const TridiagonalKernel kernel = build_chain_kernel_iid(p.n, law, rng);
        const Spectrum spectrum = kernel_spectrum(kernel);
        out.files.emplace_back(pair_name("spectrum_chain", p.n, p.seed),
                               spectrum_text(spectrum));
        out.files.emplace_back(
            pair_name("hist_chain", p.n, p.seed),
            histogram_text(make_histogram(spectrum.values, -1.0, 1.0, config.bins)));
    } else {
        const DenseKernel kernel = build_complete_kernel(p.n, law, rng);
        const Spectrum spectrum = kernel_spectrum(kernel);
        out.files.emplace_back(pair_name("spectrum_complete", p.n, p.seed),
                               spectrum_text(spectrum));
        // trimmed ESD of sqrt(n) K against the semicircle scale
        const double sigma = effective_sigma(law);
        const EmpiricalDistribution scaled =
            esd(spectrum, std::sqrt(static_cast<double>(p.n)), true);
        out.files.emplace_back(
            pair_name("hist_complete", p.n, p.seed),
            histogram_text(
                make_histogram(scaled.atoms(), -3.0 * sigma, 3.0 * sigma, config.bins)));
    }
    return out;
}

PairOutput converge_task(const ExperimentConfig& config, const DistributionSpec& law,
                         Pair p) {
    PairOutput out;
    SeededRng rng = pair_rng(p.seed, p.n);
    const DenseKernel kernel = build_complete_kernel(p.n, law, rng);
    const Spectrum spectrum = kernel_spectrum(kernel);
    const double root = std::sqrt(static_cast<double>(p.n));
    const ReferenceLaw semi = ReferenceLaw::semicircle(effective_sigma(law));
    const EmpiricalDistribution trimmed = esd(spectrum, root, true);
    const EmpiricalDistribution full = esd(spectrum, root, false);
    const DenseEdgeReport edge = dense_edge_scaled(spectrum);
    const double tv = tv_distance(invariant_measure(kernel), uniform_probability(p.n));
    std::ostringstream row;
    row << p.n << ',' << p.seed << ',' << format17(wasserstein_p(trimmed, semi, 1.0))
        << ',' << format17(wasserstein_p(trimmed, semi, 2.0)) << ','
        << format17(wasserstein_p(full, semi, 2.0)) << ','
        << format17(edge.scaled_lambda2) << ',' << format17(edge.scaled_lambda_min)
        << ',' << format17(tv);
    for (double q : config.extra_p) row << ',' << format17(wasserstein_p(full, semi, q));
    row << '\n';
    out.merged_rows = row.str();
    return out;
}

PairOutput moments_task(const DistributionSpec& law, const std::vector<double>& limit,
                        Pair p) {
    PairOutput out;
    SeededRng rng = pair_rng(p.seed, p.n);
    const TridiagonalKernel kernel = build_chain_kernel_iid(p.n, law, rng);
    const EmpiricalDistribution dist = esd(kernel_spectrum(kernel));
    std::string csv = "order,esd_moment,limit_moment,abs_diff\n";
    for (int order = 1; order <= kMomentMaxOrder; ++order) {
        const double measured = esd_moment(dist, order);
        csv += std::to_string(order) + ',' + format17(measured) + ',' +
               format17(limit[order]) + ',' + format17(std::abs(measured - limit[order])) +
               '\n';
    }
    out.files.emplace_back(pair_name("moments_chain", p.n, p.seed), std::move(csv));
    return out;
}

PairOutput edge_task(const ExperimentConfig& config, const DistributionSpec& law, Pair p) {
    PairOutput out;
    SeededRng rng = pair_rng(p.seed, p.n);
    std::ostringstream row;
    if (config.model == Model::kChain) {
        const TridiagonalKernel kernel = build_chain_kernel_iid(p.n, law, rng);
        const Spectrum spectrum = kernel_spectrum(kernel);
        row << p.n << ',' << p.seed << ',' << format17(spectrum.second_largest()) << ','
            << format17(chain_gap_lower_bound(kernel)) << '\n';
    } else {
        const DenseKernel kernel = build_complete_kernel(p.n, law, rng);
        const DenseEdgeReport report = dense_edge_scaled(kernel);
        row << p.n << ',' << p.seed << ',' << format17(report.scaled_lambda2) << ','
            << format17(report.scaled_lambda_min) << '\n';
    }
    out.merged_rows = row.str();
    return out;
}

PairOutput invariant_task(const ExperimentConfig& config, const DistributionSpec& law,
                          Pair p) {
    PairOutput out;
    SeededRng rng = pair_rng(p.seed, p.n);
    const ProbabilityVector pv =
        config.model == Model::kComplete
            ? invariant_measure(build_complete_kernel(p.n, law, rng))
            : invariant_measure(build_chain_kernel_iid(p.n, law, rng));
    out.merged_rows = std::to_string(p.n) + ',' + std::to_string(p.seed) + ',' +
                      format17(tv_distance(pv, uniform_probability(p.n))) + '\n';
    return out;
}

PairOutput trace_task(const ExperimentConfig& config, const DistributionSpec& law,
                      Pair p) {
    PairOutput out;
    SeededRng rng = pair_rng(p.seed, p.n);
    std::string csv = "steps,esd_moment,mean_return,abs_diff\n";
    auto append = [&csv](const auto& kernel) {
        for (int steps = 0; steps <= kTraceMaxSteps; ++steps) {
            const TraceIdentityReport r = trace_identity_check(kernel, steps);
            csv += std::to_string(steps) + ',' + format17(r.lhs) + ',' + format17(r.rhs) +
                   ',' + format17(r.diff) + '\n';
        }
    };
    if (config.model == Model::kComplete) {
        append(build_complete_kernel(p.n, law, rng));
        out.files.emplace_back(pair_name("trace_complete", p.n, p.seed), std::move(csv));
    } else {
        append(build_chain_kernel_iid(p.n, law, rng));
        out.files.emplace_back(pair_name("trace_chain", p.n, p.seed), std::move(csv));
    }
    return out;
}

std::string merged_header(const ExperimentConfig& config) {
    switch (config.experiment) {
        case ExperimentKind::kConverge: {
            std::ostringstream head;
            head << "n,seed,w1_trimmed,w2_trimmed,w2_untrimmed,sqrtn_lambda2,"
                    "sqrtn_lambdan,tv_invariant";
            for (double q : config.extra_p) head << ",w" << q << "_untrimmed";
            head << '\n';
            return head.str();
        }
        case ExperimentKind::kEdge:
            return config.model == Model::kChain ? "n,seed,lambda2,gap_bound\n"
                                                 : "n,seed,sqrtn_lambda2,sqrtn_lambdan\n";
        case ExperimentKind::kInvariant:
            return "n,seed,tv_uniform\n";
        default:
            return {};
    }
}

std::string merged_name(const ExperimentConfig& config) {
    const std::string model = to_string(config.model);
    switch (config.experiment) {
        case ExperimentKind::kConverge: return "converge_" + model + ".csv";
        case ExperimentKind::kEdge: return "edge_" + model + ".csv";
        case ExperimentKind::kInvariant: return "invariant_" + model + ".csv";
        default: return {};
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);  // binary: byte-identical reruns
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << content;
}

}  // namespace

ExperimentKind parse_experiment(const std::string& name) {
    if (name == "spectrum") return ExperimentKind::kSpectrum;
    if (name == "hist") return ExperimentKind::kHist;
    if (name == "converge") return ExperimentKind::kConverge;
    if (name == "moments") return ExperimentKind::kMoments;
    if (name == "edge") return ExperimentKind::kEdge;
    if (name == "invariant") return ExperimentKind::kInvariant;
    if (name == "trace") return ExperimentKind::kTrace;
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

Model parse_model(const std::string& name) {
    if (name == "complete") return Model::kComplete;
    if (name == "chain") return Model::kChain;
    throw std::invalid_argument("unknown model '" + name + "' (complete|chain)");
}

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kSpectrum: return "spectrum";
        case ExperimentKind::kHist: return "hist";
        case ExperimentKind::kConverge: return "converge";
        case ExperimentKind::kMoments: return "moments";
        case ExperimentKind::kEdge: return "edge";
        case ExperimentKind::kInvariant: return "invariant";
        case ExperimentKind::kTrace: return "trace";
    }
    return "?";
}

std::string to_string(Model model) {
    return model == Model::kComplete ? "complete" : "chain";
}

void validate(const ExperimentConfig& config) {
    const DistributionSpec law = parse_law(config.law_text);  // throws if malformed
    if (config.sizes.empty()) throw std::invalid_argument("config: empty size list");
    for (int n : config.sizes) {
        if (n < 2) throw std::invalid_argument("config: sizes must be >= 2");
    }
    if (config.seeds.empty()) throw std::invalid_argument("config: empty seed list");
    if (config.bins < 1) throw std::invalid_argument("config: bins must be >= 1");
    for (double p : config.extra_p) {
        if (!(p >= 1.0)) throw std::invalid_argument("config: Wasserstein orders need p >= 1");
    }
    if (config.out_dir.empty()) throw std::invalid_argument("config: missing output directory");
    if (config.model == Model::kChain && !support_in_unit_interval(law))
        throw std::invalid_argument("config: chain model needs a law supported in [0, 1]");
    if (config.experiment == ExperimentKind::kMoments && config.model != Model::kChain)
        throw std::invalid_argument("config: moments experiment is chain-only");
    if (config.experiment == ExperimentKind::kConverge) {
        if (config.model != Model::kComplete)
            throw std::invalid_argument("config: converge experiment is complete-only");
        if (config.sizes.size() < 2)
            throw std::invalid_argument("config: converge needs at least two sizes");
    }
}

void run_experiment(const ExperimentConfig& config) {
    validate(config);
    const DistributionSpec law = parse_law(config.law_text);
    const std::vector<Pair> pairs = config_pairs(config);

    // limit moments do not depend on (n, seed); computed once up front
    std::vector<double> moment_limits;
    if (config.experiment == ExperimentKind::kMoments) {
        moment_limits.assign(kMomentMaxOrder + 1, 0.0);
        for (int order = 2; order <= kMomentMaxOrder; order += 2) {
            moment_limits[order] = chain_limit_moment(law, order / 2);
        }
    }

    const std::vector<PairOutput> outputs = run_pairs(pairs, [&](Pair p) -> PairOutput {
        switch (config.experiment) {
            case ExperimentKind::kSpectrum: return spectrum_task(config, law, p);
            case ExperimentKind::kHist: return hist_task(config, law, p);
            case ExperimentKind::kConverge: return converge_task(config, law, p);
            case ExperimentKind::kMoments: return moments_task(law, moment_limits, p);
            case ExperimentKind::kEdge: return edge_task(config, law, p);
            case ExperimentKind::kInvariant: return invariant_task(config, law, p);
            case ExperimentKind::kTrace: return trace_task(config, law, p);
        }
        throw std::logic_error("unreachable experiment kind");
    });

    // single-threaded reducer: fixed pair order makes reruns byte-identical
    std::filesystem::create_directories(config.out_dir);
    std::vector<std::string> names;
    for (const PairOutput& out : outputs) {
        for (const auto& [name, content] : out.files) {
            write_file(config.out_dir / name, content);
            names.push_back(name);
        }
    }
    std::string merged;
    for (const PairOutput& out : outputs) merged += out.merged_rows;
    if (!merged.empty()) {
        const std::string name = merged_name(config);
        write_file(config.out_dir / name, merged_header(config) + merged);
        names.push_back(name);
    }

    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["experiment"] = to_string(config.experiment);
    manifest["model"] = to_string(config.model);
    manifest["law"] = law_to_string(law);
    manifest["n"] = config.sizes;
    manifest["seeds"] = config.seeds;
    manifest["bins"] = config.bins;
    manifest["p"] = config.extra_p;
    manifest["outputs"] = names;
    write_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string format17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace mspec
