#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mspec/law.hpp"

namespace mspec {

inline constexpr const char* kVersion = "0.1.0";

enum class Model { kComplete, kChain };

enum class ExperimentKind {
    kSpectrum,
    kHist,
    kConverge,
    kMoments,
    kEdge,
    kInvariant,
    kTrace,
};

ExperimentKind parse_experiment(const std::string& name);
Model parse_model(const std::string& name);
std::string to_string(ExperimentKind kind);
std::string to_string(Model model);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::kSpectrum;
    Model model = Model::kComplete;
    std::string law_text;
    std::vector<int> sizes;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir;
    int bins = 200;                // histogram bins (overridable)
    std::vector<double> extra_p;   // extra Wasserstein orders for converge
    bool export_kernel = false;    // also write the kernel CSV (spectrum)
};

// Throws std::invalid_argument on an inconsistent configuration (bad law,
// wrong model for the experiment, empty size/seed lists, ...).
void validate(const ExperimentConfig& config);

// Runs the configured experiment, writing per-(n, seed) CSV files plus a
// manifest.json into the output directory. Reruns with an identical
// configuration reproduce the outputs byte for byte.
void run_experiment(const ExperimentConfig& config);

// 17 significant digits, the format used in every CSV.
std::string format17(double value);

}  // namespace mspec
