#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <tuple>

#include <CLI11.hpp>

#include "linsep/config.hpp"
#include "linsep/experiment.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    std::int64_t runs = -1;
};

void add_common_flags(CLI::App* cmd, CliOptions& options) {
    cmd->add_option("--config", options.config_path, "Experiment config file (key = value sections)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", options.out_dir, "Output directory for artifacts");
    cmd->add_option("--seed", options.seed, "Override base seed");
    cmd->add_option("--runs", options.runs, "Override the number of runs per k");
}

int run_task(linsep::Task task, const CliOptions& options) {
    linsep::ConfigFile file;
    if (!options.config_path.empty()) file = linsep::ConfigFile::parse_file(options.config_path);
    linsep::ExperimentConfig config = linsep::experiment_config_from(file, task);
    if (!options.out_dir.empty()) config.output_dir = options.out_dir;
    if (options.seed >= 0) config.base_seed = static_cast<std::uint64_t>(options.seed);
    if (options.runs >= 1) config.runs = static_cast<int>(options.runs);

    const auto artifacts = linsep::run_experiment(config);
    for (const auto& path : artifacts) std::cout << path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SGD on linearly separable data: trainer, bound calculators and experiment demos"};
    app.require_subcommand(1);

    CliOptions options;
    const std::tuple<const char*, const char*, linsep::Task> tasks[] = {
        {"train", "Multi-seed SGD runs on synthetic separable data", linsep::Task::train},
        {"bounds", "Evaluate the closed-form bound calculators", linsep::Task::bounds},
        {"lower-bound-demo", "Adversarial sequence vs the update lower bound",
         linsep::Task::lower_bound_demo},
        {"relu-localmin-demo", "Build and verify ReLU bad local minima",
         linsep::Task::relu_localmin_demo},
        {"relu-montecarlo", "Dead-set Monte Carlo on the orthogonal task",
         linsep::Task::relu_montecarlo},
        {"mnist-fig1", "MNIST 3-vs-5 over-parameterization experiment", linsep::Task::mnist_fig1},
    };
    for (const auto& [name, description, task] : tasks) {
        CLI::App* cmd = app.add_subcommand(name, description);
        add_common_flags(cmd, options);
        cmd->callback([task, &options] { run_task(task, options); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
