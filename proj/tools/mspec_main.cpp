#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mspec/experiments.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mspec: spectra of random reversible Markov chains "
                 "(complete-graph and birth-and-death models)"};
    app.set_version_flag("--version", std::string(mspec::kVersion));

    std::string experiment;
    std::string model = "complete";
    std::string law;
    std::vector<int> sizes;
    std::vector<std::uint64_t> seeds;
    std::string out_dir;
    int bins = 200;
    std::vector<double> extra_p;
    bool export_kernel = false;

    app.add_option("experiment", experiment,
                   "spectrum|hist|converge|moments|edge|invariant|trace")
        ->required();
    app.add_option("--model", model, "complete|chain")->capture_default_str();
    app.add_option("--law", law,
                   "pointmass:c | uniform:a,b | uniform2:a,b,c,d | beta:alpha,beta | "
                   "atom0:p,<inner>")
        ->required();
    app.add_option("--n", sizes, "state-space sizes, e.g. 250,500,1000")
        ->required()
        ->delimiter(',');
    app.add_option("--seeds", seeds, "seeds, e.g. 1,2,3")->required()->delimiter(',');
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--bins", bins, "histogram bin count")->capture_default_str();
    app.add_option("--p", extra_p, "extra Wasserstein orders for converge, e.g. 3")
        ->delimiter(',');
    app.add_flag("--export-kernel", export_kernel, "also write the kernel CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    mspec::ExperimentConfig config;
    config.model = mspec::Model::kComplete;
    config.law_text = law;
    config.sizes = sizes;
    config.seeds = seeds;
    config.out_dir = out_dir;
    config.bins = bins;
    config.extra_p = extra_p;
    config.export_kernel = export_kernel;

    try {
        config.experiment = mspec::parse_experiment(experiment);
        config.model = mspec::parse_model(model);
        mspec::validate(config);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "mspec: config error: %s\n", e.what());
        return kExitConfigError;
    }

    try {
        mspec::run_experiment(config);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "mspec: config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "mspec: config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "mspec: numeric failure: %s\n", e.what());
        return kExitNumericError;
    }
    return 0;
}
