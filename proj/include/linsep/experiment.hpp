#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linsep/config.hpp"
#include "linsep/types.hpp"

namespace linsep {

enum class Task { train, bounds, lower_bound_demo, relu_localmin_demo, relu_montecarlo, mnist_fig1 };

Task task_from_string(const std::string& name);
std::string to_string(Task task);

/// Everything a run needs, resolved from a config file plus CLI overrides.
/// Defaults depend on the task; see experiment_config_from.
struct ExperimentConfig {
    Task task = Task::train;
    std::string output_dir = "out";
    int runs = 1;
    std::uint64_t base_seed = 0;

    // Synthetic dataset (train task) and orthogonal-task dimension.
    int dim = 20;
    int n_train = 500;
    int n_test = 0;
    double norm_wstar = 2.0;
    std::uint64_t dataset_seed = 1;

    // Network and SGD settings.
    std::vector<int> k_values{10};
    double eta = 0.01;
    double alpha = 0.01;
    bool relu = false;
    std::string init_scheme = "balanced_default";  // bounded_rows | symmetric_box
    double init_row_radius = 0.0;
    double init_out_scale = 0.0;
    double box_half_width = 1.0;  // C, for symmetric_box and the MC demo
    SamplingOrder order = SamplingOrder::uniform_with_replacement;
    int max_epochs = 1000;
    double margin_tol = 1e-9;

    // Bound-evaluation extras.
    std::int64_t sample_count = 3000;  // n
    double delta = 0.05;
    double l_v = 0.0;
    std::int64_t c_k = -1;  // -1 means ceil(M_k)

    // Inputs for the bounds task (v/R of 0 mean 1/sqrt(2k); d of 0 skips the
    // ReLU threshold reports).
    double bound_norm_wstar = 1.0;
    double bound_alpha = 0.5;
    double bound_eta = 1.0;
    int bound_k = 2;
    double bound_v = 0.0;
    double bound_R = 0.0;
    int bound_d = 0;
    double bound_C = 1.0;

    // Grids for the lower-bound demo.
    std::vector<int> demo_dims{4, 16, 64};
    std::vector<double> demo_etas{0.1, 1.0, 10.0};

    // Monte Carlo trials (relu-montecarlo).
    int trials = 1000;

    // MNIST input files (mnist-fig1).
    std::string mnist_images;
    std::string mnist_labels;
    int digit_pos = 3;
    int digit_neg = 5;
};

/// Resolves a parsed config file (possibly empty) into a full ExperimentConfig
/// for the given task, applying per-task defaults.
ExperimentConfig experiment_config_from(const ConfigFile& file, Task task);

/// Runs the configured experiment and writes its artifacts (runs.csv,
/// summary.json and SVG charts as applicable) under config.output_dir.
/// Returns the paths written.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

/// Per-trial ReLU orthogonal-task Monte Carlo: SymmetricBox(C) init, outcome
/// predicted from the initial dead set, then trained to termination. The dead
/// set is asserted constant after every step and the prediction is asserted
/// to match the training outcome; any mismatch throws.
struct MonteCarloResult {
    int trials = 0;
    double frac_global = 0.0;
    double frac_nonglobal = 0.0;
    std::int64_t max_iters_when_global = 0;
};
MonteCarloResult monte_carlo_relu(int dim, int k, double box_half_width, double eta, int trials,
                                  std::uint64_t base_seed);

}  // namespace linsep
