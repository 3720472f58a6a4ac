#include "linsep/experiment.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "linsep/bounds.hpp"
#include "linsep/constructions.hpp"
#include "linsep/csv.hpp"
#include "linsep/data.hpp"
#include "linsep/network.hpp"
#include "linsep/svg.hpp"
#include "linsep/trainer.hpp"

namespace linsep {

using nlohmann::json;

Task task_from_string(const std::string& name) {
    if (name == "train") return Task::train;
    if (name == "bounds") return Task::bounds;
    if (name == "lower-bound-demo") return Task::lower_bound_demo;
    if (name == "relu-localmin-demo") return Task::relu_localmin_demo;
    if (name == "relu-montecarlo") return Task::relu_montecarlo;
    if (name == "mnist-fig1") return Task::mnist_fig1;
    throw std::invalid_argument("unknown task: " + name);
}

std::string to_string(Task task) {
    switch (task) {
        case Task::train: return "train";
        case Task::bounds: return "bounds";
        case Task::lower_bound_demo: return "lower-bound-demo";
        case Task::relu_localmin_demo: return "relu-localmin-demo";
        case Task::relu_montecarlo: return "relu-montecarlo";
        case Task::mnist_fig1: return "mnist-fig1";
    }
    return "unknown";
}

ExperimentConfig experiment_config_from(const ConfigFile& file, Task task) {
    ExperimentConfig config;
    config.task = task;
    if (task == Task::mnist_fig1) {
        // mnist-fig1 defaults: digits 3 vs 5, 3000/1000 split, 40 runs over
        // k in {10, 100, 1000}; eta and alpha are this lab's choices and are
        // echoed in summary.json.
        config.runs = 40;
        config.k_values = {10, 100, 1000};
        config.n_train = 3000;
        config.n_test = 1000;
        config.eta = 0.01;
        config.alpha = 0.01;
        config.max_epochs = 200;
    } else if (task == Task::relu_montecarlo) {
        config.dim = 32;
        config.k_values = {3};
        config.eta = 0.5;
        config.relu = true;
        config.trials = 1000;
    } else if (task == Task::relu_localmin_demo) {
        config.dim = 10;
        config.n_train = 40;
        config.k_values = {4};
        config.runs = 5;
        config.trials = 1000;  // perturbations per dataset
    } else if (task == Task::lower_bound_demo) {
        config.alpha = 0.5;
        config.k_values = {2, 8};
        config.order = SamplingOrder::cyclic;
        config.max_epochs = 100000;
    }

    config.output_dir = file.get_string("experiment.out", config.output_dir);
    config.runs = static_cast<int>(file.get_int("experiment.runs", config.runs));
    config.base_seed = static_cast<std::uint64_t>(file.get_int("experiment.base_seed",
                                                               static_cast<std::int64_t>(config.base_seed)));

    config.dim = static_cast<int>(file.get_int("dataset.d", config.dim));
    config.n_train = static_cast<int>(file.get_int("dataset.n_train", config.n_train));
    config.n_test = static_cast<int>(file.get_int("dataset.n_test", config.n_test));
    config.norm_wstar = file.get_double("dataset.norm_wstar", config.norm_wstar);
    config.dataset_seed = static_cast<std::uint64_t>(
        file.get_int("dataset.seed", static_cast<std::int64_t>(config.dataset_seed)));

    if (file.has("trainer.k")) {
        config.k_values.clear();
        for (auto k : file.get_int_list("trainer.k")) config.k_values.push_back(static_cast<int>(k));
    }
    config.eta = file.get_double("trainer.eta", config.eta);
    config.alpha = file.get_double("trainer.alpha", config.alpha);
    const std::string activation = file.get_string("trainer.activation", config.relu ? "relu" : "leaky_relu");
    if (activation == "relu") config.relu = true;
    else if (activation == "leaky_relu") config.relu = false;
    else throw std::runtime_error("config: unknown activation '" + activation + "'");
    config.init_scheme = file.get_string("trainer.init", config.init_scheme);
    config.init_row_radius = file.get_double("trainer.init_R", config.init_row_radius);
    config.init_out_scale = file.get_double("trainer.init_v", config.init_out_scale);
    config.box_half_width = file.get_double("trainer.init_C", config.box_half_width);
    config.order = sampling_order_from_string(file.get_string("trainer.order", to_string(config.order)));
    config.max_epochs = static_cast<int>(file.get_int("trainer.max_epochs", config.max_epochs));
    config.margin_tol = file.get_double("trainer.margin_tol", config.margin_tol);

    config.sample_count = file.get_int("bounds.n", config.sample_count);
    config.delta = file.get_double("bounds.delta", config.delta);
    config.l_v = file.get_double("bounds.L_V", config.l_v);
    config.c_k = file.get_int("bounds.c_k", config.c_k);
    config.bound_norm_wstar = file.get_double("bounds.norm_wstar", config.bound_norm_wstar);
    config.bound_alpha = file.get_double("bounds.alpha", config.bound_alpha);
    config.bound_eta = file.get_double("bounds.eta", config.bound_eta);
    config.bound_k = static_cast<int>(file.get_int("bounds.k", config.bound_k));
    config.bound_v = file.get_double("bounds.v", config.bound_v);
    config.bound_R = file.get_double("bounds.R", config.bound_R);
    config.bound_d = static_cast<int>(file.get_int("bounds.d", config.bound_d));
    config.bound_C = file.get_double("bounds.C", config.bound_C);

    if (file.has("demo.d")) {
        config.demo_dims.clear();
        for (auto d : file.get_int_list("demo.d")) config.demo_dims.push_back(static_cast<int>(d));
    }
    config.demo_etas = file.get_double_list("demo.eta", config.demo_etas);
    config.trials = static_cast<int>(file.get_int("mc.trials", config.trials));

    config.mnist_images = file.get_string("mnist.images", config.mnist_images);
    config.mnist_labels = file.get_string("mnist.labels", config.mnist_labels);
    config.digit_pos = static_cast<int>(file.get_int("mnist.digit_pos", config.digit_pos));
    config.digit_neg = static_cast<int>(file.get_int("mnist.digit_neg", config.digit_neg));

    if (config.runs < 1) throw std::runtime_error("config: runs must be >= 1");
    if (config.k_values.empty()) throw std::runtime_error("config: k list must be nonempty");
    return config;
}

namespace {

namespace fs = std::filesystem;

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir " + dir + ": " + ec.message());
    // Probe writability before any run starts.
    const fs::path probe = fs::path(dir) / ".write_probe";
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output dir " + dir + " is not writable");
    out.close();
    fs::remove(probe, ec);
}

void write_json(const json& document, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << document.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failure on " + path);
}

/// Runs fn(run_index) for each index on a small worker pool. Results must be
/// written into preallocated per-index slots by fn itself.
void parallel_runs(int count, const std::function<void(int)>& fn) {
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : pool) thread.join();
    if (error) std::rethrow_exception(error);
}

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    if (values.empty()) return a;
    a.min = values[0];
    a.max = values[0];
    for (double v : values) {
        a.mean += v;
        a.min = std::min(a.min, v);
        a.max = std::max(a.max, v);
    }
    a.mean /= static_cast<double>(values.size());
    for (double v : values) a.stddev += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(a.stddev / static_cast<double>(values.size()));
    return a;
}

json to_json(const Aggregate& a) {
    return json{{"mean", a.mean}, {"std", a.stddev}, {"min", a.min}, {"max", a.max}};
}

json to_json(const BoundReport& report) {
    json j{{"formula", to_string(report.formula)}, {"value", report.value}, {"inputs", report.inputs}};
    if (!report.notes.empty()) j["notes"] = report.notes;
    return j;
}

InitScheme resolve_init(const ExperimentConfig& config, int k) {
    if (config.init_scheme == "balanced_default" || config.init_scheme == "default")
        return InitScheme::balanced_default();
    if (config.init_scheme == "bounded_rows") {
        const double R = config.init_row_radius > 0 ? config.init_row_radius : 1.0 / std::sqrt(2.0 * k);
        const double v = config.init_out_scale > 0 ? config.init_out_scale : R;
        return InitScheme::bounded_rows(R, v);
    }
    if (config.init_scheme == "symmetric_box") return InitScheme::symmetric_box(config.box_half_width);
    throw std::runtime_error("config: unknown init scheme '" + config.init_scheme + "'");
}

ActivationKind resolve_activation(const ExperimentConfig& config) {
    return config.relu ? ActivationKind::relu() : ActivationKind::leaky_relu(config.alpha);
}

/// Mean curve across runs; shorter runs carry their final value forward.
std::vector<double> mean_curve(const std::vector<std::vector<double>>& curves) {
    std::size_t length = 0;
    for (const auto& c : curves) length = std::max(length, c.size());
    std::vector<double> mean(length, 0.0);
    for (const auto& c : curves)
        for (std::size_t i = 0; i < length; ++i) mean[i] += i < c.size() ? c[i] : c.back();
    for (auto& v : mean) v /= static_cast<double>(curves.size());
    return mean;
}

json settings_json(const ExperimentConfig& config) {
    json j{{"task", to_string(config.task)},
           {"runs", config.runs},
           {"base_seed", config.base_seed},
           {"eta", config.eta},
           {"activation", config.relu ? "relu" : "leaky_relu"},
           {"k", config.k_values},
           {"order", to_string(config.order)},
           {"max_epochs", config.max_epochs},
           {"margin_tol", config.margin_tol}};
    if (!config.relu) j["alpha"] = config.alpha;
    return j;
}

std::vector<std::string> run_training_grid(const ExperimentConfig& config,
                                           const LabeledDataset& train_set,
                                           const LabeledDataset* test_set, json dataset_info) {
    ensure_output_dir(config.output_dir);
    const ActivationKind activation = resolve_activation(config);
    const std::string activation_name = activation.name();
    const double alpha = config.relu ? 0.0 : config.alpha;

    struct RunOutput {
        RunRow row;
        std::vector<double> train_loss_curve;
        std::vector<double> test_err_curve;
    };
    const int total = static_cast<int>(config.k_values.size()) * config.runs;
    std::vector<RunOutput> outputs(total);

    parallel_runs(total, [&](int run_id) {
        const int k = config.k_values[run_id / config.runs];
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run_id);
        Rng init_rng(seed);
        NetworkParams params =
            initialize(resolve_init(config, k), k, train_set.dim(), activation, init_rng);
        TrainConfig train_config;
        train_config.learning_rate = config.eta;
        train_config.max_epochs = config.max_epochs;
        train_config.order = config.order;
        train_config.seed = seed;
        train_config.margin_tol = config.margin_tol;
        const RunRecord record = train(params, train_set, train_config, test_set);

        RunOutput& out = outputs[run_id];
        out.row = make_run_row(run_id, seed, k, config.eta, alpha, activation_name, record);
        for (const auto& stats : record.epoch_stats) {
            out.train_loss_curve.push_back(stats.hinge_loss);
            if (stats.zero_one_test_error) out.test_err_curve.push_back(*stats.zero_one_test_error);
        }
    });

    std::vector<std::string> artifacts;
    std::vector<RunRow> rows;
    for (const auto& out : outputs) rows.push_back(out.row);
    const std::string csv_path = (fs::path(config.output_dir) / "runs.csv").string();
    emit_csv(rows, csv_path);
    artifacts.push_back(csv_path);

    json summary{{"settings", settings_json(config)}, {"dataset", std::move(dataset_info)}};
    summary["per_k"] = json::array();

    for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
        const int k = config.k_values[ki];
        std::vector<double> updates, final_loss, final_err, final_test;
        std::vector<std::vector<double>> loss_curves, test_curves;
        std::map<std::string, int> status_counts;
        for (int r = 0; r < config.runs; ++r) {
            const auto& out = outputs[ki * config.runs + r];
            updates.push_back(static_cast<double>(out.row.nonzero_updates));
            final_loss.push_back(out.row.final_train_loss);
            final_err.push_back(out.row.final_train_err);
            if (out.row.final_test_err) final_test.push_back(*out.row.final_test_err);
            ++status_counts[to_string(out.row.status)];
            loss_curves.push_back(out.train_loss_curve);
            if (!out.test_err_curve.empty()) test_curves.push_back(out.test_err_curve);
        }

        json entry{{"k", k},
                   {"runs", config.runs},
                   {"nonzero_updates", to_json(aggregate(updates))},
                   {"final_train_loss", to_json(aggregate(final_loss))},
                   {"final_train_err", to_json(aggregate(final_err))},
                   {"status_counts", status_counts}};
        if (!final_test.empty()) entry["final_test_err"] = to_json(aggregate(final_test));

        // Bound values for this k, when the margin-1 separator norm is known.
        if (train_set.separator() && !config.relu) {
            const double wnorm = norm(*train_set.separator());
            const double rv = 1.0 / std::sqrt(2.0 * k);
            double R = rv, v = rv;
            if (config.init_scheme == "bounded_rows") {
                R = config.init_row_radius > 0 ? config.init_row_radius : rv;
                v = config.init_out_scale > 0 ? config.init_out_scale : R;
            }
            try {
                json bounds_json;
                bounds_json["mk"] = to_json(update_cap_report(wnorm, config.alpha, config.eta, k, v, R));
                bounds_json["mk_ceil"] =
                    std::ceil(nonzero_update_cap(wnorm, config.alpha, config.eta, k, v, R));
                const std::int64_t n = static_cast<std::int64_t>(train_set.size());
                try {
                    bounds_json["generalization"] = to_json(
                        generalization_report(wnorm, config.alpha, config.eta, k, v, R, n, config.delta));
                } catch (const std::exception& e) {
                    bounds_json["generalization_error"] = e.what();
                }
                entry["bounds"] = std::move(bounds_json);
            } catch (const std::exception& e) {
                entry["bounds_error"] = e.what();
            }
        }
        summary["per_k"].push_back(std::move(entry));

        // Per-k convergence charts.
        const std::string suffix = "k" + std::to_string(k) + ".svg";
        std::vector<double> mean_loss = mean_curve(loss_curves);
        std::vector<double> epochs(mean_loss.size());
        for (std::size_t i = 0; i < epochs.size(); ++i) epochs[i] = static_cast<double>(i);
        const std::string loss_path = (fs::path(config.output_dir) / ("train_loss_" + suffix)).string();
        emit_svg_plot({Series{"k=" + std::to_string(k), epochs, mean_loss}},
                      "Mean training hinge loss (k=" + std::to_string(k) + ")", "epoch", "hinge loss",
                      loss_path);
        artifacts.push_back(loss_path);
        if (!test_curves.empty()) {
            std::vector<double> mean_test = mean_curve(test_curves);
            std::vector<double> test_epochs(mean_test.size());
            for (std::size_t i = 0; i < test_epochs.size(); ++i) test_epochs[i] = static_cast<double>(i);
            const std::string test_path =
                (fs::path(config.output_dir) / ("test_error_" + suffix)).string();
            emit_svg_plot({Series{"k=" + std::to_string(k), test_epochs, mean_test}},
                          "Mean 0-1 test error (k=" + std::to_string(k) + ")", "epoch", "0-1 test error",
                          test_path);
            artifacts.push_back(test_path);
        }
    }

    const std::string summary_path = (fs::path(config.output_dir) / "summary.json").string();
    write_json(summary, summary_path);
    artifacts.push_back(summary_path);
    return artifacts;
}

std::vector<std::string> run_train_task(const ExperimentConfig& config) {
    SeparableSpec spec;
    spec.dim = config.dim;
    spec.count = config.n_train + config.n_test;
    spec.norm_wstar_target = config.norm_wstar;
    spec.seed = config.dataset_seed;
    const LabeledDataset pool = generate_separable(spec);
    std::vector<Example> train_examples(pool.examples().begin(), pool.examples().begin() + config.n_train);
    std::vector<Example> test_examples(pool.examples().begin() + config.n_train, pool.examples().end());
    const LabeledDataset train_set(std::move(train_examples), *pool.separator());
    const LabeledDataset test_set = config.n_test > 0
                                        ? LabeledDataset(std::move(test_examples), *pool.separator())
                                        : LabeledDataset();

    json info{{"kind", "separable"},
              {"d", config.dim},
              {"n_train", config.n_train},
              {"n_test", config.n_test},
              {"norm_wstar", config.norm_wstar},
              {"seed", config.dataset_seed}};
    return run_training_grid(config, train_set, config.n_test > 0 ? &test_set : nullptr, std::move(info));
}

std::vector<std::string> run_bounds_task(const ExperimentConfig& config) {
    ensure_output_dir(config.output_dir);
    const double wnorm = config.bound_norm_wstar;
    const double alpha = config.bound_alpha;
    const double eta = config.bound_eta;
    const int k = config.bound_k;
    const double rv = 1.0 / std::sqrt(2.0 * k);
    const double v = config.bound_v > 0 ? config.bound_v : rv;
    const double R = config.bound_R > 0 ? config.bound_R : rv;

    json reports = json::array();
    reports.push_back(to_json(update_cap_report(wnorm, alpha, eta, k, v, R)));
    reports.push_back(to_json(lower_bound_report(wnorm, alpha, eta, k, v, R)));
    const std::int64_t c_k = config.c_k >= 0
                                 ? config.c_k
                                 : static_cast<std::int64_t>(std::ceil(nonzero_update_cap(wnorm, alpha, eta, k, v, R)));
    reports.push_back(to_json(compression_report(c_k, config.sample_count, config.delta, config.l_v)));
    reports.push_back(to_json(
        generalization_report(wnorm, alpha, eta, k, v, R, config.sample_count, config.delta)));
    if (config.bound_d > 0) {
        for (auto& report : relu_threshold_reports(config.bound_d, config.delta))
            reports.push_back(to_json(report));
        reports.push_back(to_json(relu_iteration_report(config.bound_d, config.bound_C, eta)));
    }

    json summary{{"settings", settings_json(config)}, {"reports", std::move(reports)}};
    const std::string path = (fs::path(config.output_dir) / "summary.json").string();
    write_json(summary, path);
    return {path};
}

std::vector<std::string> run_lower_bound_demo(const ExperimentConfig& config) {
    ensure_output_dir(config.output_dir);
    const ActivationKind activation = ActivationKind::leaky_relu(config.alpha);

    struct Cell {
        int d, k;
        double eta;
        std::int64_t updates;
        double bound;
        RunStatus status;
        RunRow row;
    };
    std::vector<Cell> cells;
    std::int64_t run_id = 0;
    bool all_satisfied = true;
    for (int d : config.demo_dims) {
        const LabeledDataset data = adversarial_sequence(d);
        for (double eta : config.demo_etas) {
            for (int k : config.k_values) {
                const double rv = 1.0 / std::sqrt(2.0 * k);
                NetworkParams params = adversarial_init(k, d, rv, rv, activation);
                TrainConfig train_config;
                train_config.learning_rate = eta;
                train_config.max_epochs = config.max_epochs;
                train_config.order = SamplingOrder::cyclic;
                train_config.seed = config.base_seed;
                const RunRecord record = train(params, data, train_config);
                Cell cell;
                cell.d = d;
                cell.k = k;
                cell.eta = eta;
                cell.updates = record.nonzero_updates;
                cell.bound = lower_bound(std::sqrt(static_cast<double>(d)), config.alpha, eta, k, rv, rv);
                cell.status = record.status;
                cell.row = make_run_row(run_id++, config.base_seed, k, eta, config.alpha,
                                        activation.name(), record);
                all_satisfied = all_satisfied && record.status == RunStatus::global_min &&
                                static_cast<double>(cell.updates) >= cell.bound &&
                                cell.updates >= static_cast<std::int64_t>(d);
                cells.push_back(std::move(cell));
            }
        }
    }

    std::vector<RunRow> rows;
    for (const auto& cell : cells) rows.push_back(cell.row);
    const std::string csv_path = (fs::path(config.output_dir) / "runs.csv").string();
    emit_csv(rows, csv_path);

    json grid = json::array();
    for (const auto& cell : cells)
        grid.push_back(json{{"d", cell.d},
                            {"k", cell.k},
                            {"eta", cell.eta},
                            {"nonzero_updates", cell.updates},
                            {"lower_bound", cell.bound},
                            {"floor_d", cell.d},
                            {"status", to_string(cell.status)},
                            {"satisfied", static_cast<double>(cell.updates) >= cell.bound &&
                                              cell.updates >= static_cast<std::int64_t>(cell.d)}});
    json summary{{"settings", settings_json(config)},
                 {"grid", std::move(grid)},
                 {"all_satisfied", all_satisfied}};
    const std::string summary_path = (fs::path(config.output_dir) / "summary.json").string();
    write_json(summary, summary_path);

    // Updates vs d, one series per (k, eta), with the evaluated bound dashed
    // as a separate series.
    std::vector<Series> series;
    for (int k : config.k_values)
        for (double eta : config.demo_etas) {
            Series measured{"updates k=" + std::to_string(k) + " eta=" + format_double(eta), {}, {}};
            Series bound{"bound k=" + std::to_string(k) + " eta=" + format_double(eta), {}, {}};
            for (const auto& cell : cells) {
                if (cell.k != k || cell.eta != eta) continue;
                measured.x.push_back(cell.d);
                measured.y.push_back(static_cast<double>(cell.updates));
                bound.x.push_back(cell.d);
                bound.y.push_back(cell.bound);
            }
            series.push_back(std::move(measured));
            series.push_back(std::move(bound));
        }
    const std::string svg_path = (fs::path(config.output_dir) / "updates_vs_d.svg").string();
    emit_svg_plot(series, "Non-zero updates vs adversarial dimension", "d", "non-zero updates", svg_path);
    return {csv_path, summary_path, svg_path};
}

std::vector<std::string> run_relu_localmin_demo(const ExperimentConfig& config) {
    ensure_output_dir(config.output_dir);
    const int k = config.k_values.front();
    json datasets = json::array();
    bool all_ok = true;
    for (int run = 0; run < config.runs; ++run) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run);
        SeparableSpec spec;
        spec.dim = config.dim;
        spec.count = config.n_train;
        spec.norm_wstar_target = config.norm_wstar;
        spec.seed = seed;
        const LabeledDataset data = generate_separable(spec);
        Rng rng(seed + 1);
        const BadLocalMin bad = relu_bad_local_min(data, k, rng);
        const double loss = hinge_loss(bad.params, data);
        const double grad_norm = batch_subgradient(bad.params, data).frobenius_norm();

        int changed = 0;
        for (int trial = 0; trial < config.trials; ++trial) {
            const NetworkParams perturbed = with_random_perturbation(bad.params, bad.safe_eps, rng);
            if (hinge_loss(perturbed, data) != loss) ++changed;
        }
        const bool ok = loss > 0.5 && grad_norm == 0.0 && changed == 0;
        all_ok = all_ok && ok;
        datasets.push_back(json{{"seed", seed},
                                {"hinge_loss", loss},
                                {"batch_subgradient_norm", grad_norm},
                                {"safe_eps", bad.safe_eps},
                                {"perturbations", config.trials},
                                {"perturbations_changing_loss", changed},
                                {"ok", ok}});
    }
    json summary{{"settings", settings_json(config)}, {"datasets", std::move(datasets)}, {"all_ok", all_ok}};
    const std::string path = (fs::path(config.output_dir) / "summary.json").string();
    write_json(summary, path);
    return {path};
}

std::vector<std::string> run_relu_montecarlo(const ExperimentConfig& config) {
    ensure_output_dir(config.output_dir);
    json per_k = json::array();
    for (int k : config.k_values) {
        const MonteCarloResult result = monte_carlo_relu(config.dim, k, config.box_half_width,
                                                         config.eta, config.trials, config.base_seed);
        const auto thresholds = relu_thresholds(config.dim, config.delta);
        per_k.push_back(json{{"k", k},
                             {"trials", result.trials},
                             {"frac_global", result.frac_global},
                             {"frac_nonglobal", result.frac_nonglobal},
                             {"closed_form_nonglobal", orthogonal_nonglobal_probability(config.dim, k)},
                             {"max_iters_when_global", result.max_iters_when_global},
                             {"iteration_bound",
                              relu_iteration_bound(config.dim, config.box_half_width, config.eta)},
                             {"k_fail_threshold", thresholds.k_fail},
                             {"k_succeed_threshold", thresholds.k_succeed},
                             {"delta", config.delta}});
    }
    json summary{{"settings", settings_json(config)},
                 {"d", config.dim},
                 {"C", config.box_half_width},
                 {"per_k", std::move(per_k)}};
    const std::string path = (fs::path(config.output_dir) / "summary.json").string();
    write_json(summary, path);
    return {path};
}

std::vector<std::string> run_mnist_fig1(const ExperimentConfig& config) {
    if (config.mnist_images.empty() || config.mnist_labels.empty())
        throw std::runtime_error("mnist-fig1: set mnist.images and mnist.labels in the config");
    if (!fs::exists(config.mnist_images))
        throw std::runtime_error("mnist-fig1: missing file " + config.mnist_images);
    if (!fs::exists(config.mnist_labels))
        throw std::runtime_error("mnist-fig1: missing file " + config.mnist_labels);

    const RawIdxData raw = load_idx(config.mnist_images, config.mnist_labels);
    const BinaryDigitTask task = build_mnist_task(raw, config.digit_pos, config.digit_neg,
                                                  config.n_train, config.n_test, config.dataset_seed);

    json info{{"kind", "mnist"},
              {"images", config.mnist_images},
              {"labels", config.mnist_labels},
              {"digit_pos", config.digit_pos},
              {"digit_neg", config.digit_neg},
              {"n_train", config.n_train},
              {"n_test", config.n_test},
              {"norm_divisor", task.max_norm},
              {"label_map", json{{"+1", config.digit_pos}, {"-1", config.digit_neg}}}};

    // ||w*|| for the bound calculators comes from the mistake-driven
    // estimate; its norm is an upper-bound surrogate for the (unknown)
    // minimal margin-1 separator.
    LabeledDataset train_set = task.train;
    try {
        auto separator = estimate_separator(task.train, 200);
        info["norm_wstar_estimated"] = norm(separator);
        train_set = LabeledDataset(task.train.examples(), std::move(separator));
    } catch (const std::exception& e) {
        info["separator_note"] = std::string("not certified: ") + e.what();
    }
    return run_training_grid(config, train_set, &task.test, std::move(info));
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& config) {
    if (config.runs < 1) throw std::invalid_argument("run_experiment: runs must be >= 1");
    if (config.k_values.empty()) throw std::invalid_argument("run_experiment: k list must be nonempty");
    switch (config.task) {
        case Task::train: return run_train_task(config);
        case Task::bounds: return run_bounds_task(config);
        case Task::lower_bound_demo: return run_lower_bound_demo(config);
        case Task::relu_localmin_demo: return run_relu_localmin_demo(config);
        case Task::relu_montecarlo: return run_relu_montecarlo(config);
        case Task::mnist_fig1: return run_mnist_fig1(config);
    }
    throw std::logic_error("run_experiment: unreachable");
}

MonteCarloResult monte_carlo_relu(int dim, int k, double box_half_width, double eta, int trials,
                                  std::uint64_t base_seed) {
    if (trials < 1) throw std::invalid_argument("monte_carlo_relu: trials must be >= 1");
    const LabeledDataset data = orthogonal_dataset(dim);
    MonteCarloResult result;
    result.trials = trials;
    std::atomic<int> global_count{0};
    std::atomic<std::int64_t> max_iters{0};

    parallel_runs(trials, [&](int trial) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(trial);
        Rng rng(seed);
        NetworkParams params =
            initialize(InitScheme::symmetric_box(box_half_width), k, dim, ActivationKind::relu(), rng);
        const ReluOutcome predicted = predict_relu_outcome(params);
        const DeadSet initial_dead = compute_dead_set(params);

        TrainConfig config;
        config.learning_rate = eta;
        config.max_epochs = 100000;
        config.order = SamplingOrder::uniform_with_replacement;
        config.seed = seed;
        const auto observer = [&](const NetworkParams& state, std::int64_t, bool) {
            if (compute_dead_set(state).indices != initial_dead.indices)
                throw std::logic_error("monte_carlo_relu: dead set changed during training");
        };
        const RunRecord record = train(params, data, config, nullptr, observer);
        if (record.status == RunStatus::epoch_limit)
            throw std::logic_error("monte_carlo_relu: run hit the epoch limit");
        const ReluOutcome outcome =
            record.status == RunStatus::global_min ? ReluOutcome::global : ReluOutcome::nonglobal;
        if (outcome != predicted)
            throw std::logic_error("monte_carlo_relu: dead-set prediction did not match outcome");
        if (outcome == ReluOutcome::global) {
            global_count.fetch_add(1);
            std::int64_t seen = max_iters.load();
            while (record.nonzero_updates > seen &&
                   !max_iters.compare_exchange_weak(seen, record.nonzero_updates)) {
            }
        }
    });

    result.frac_global = static_cast<double>(global_count.load()) / trials;
    result.frac_nonglobal = 1.0 - result.frac_global;
    result.max_iters_when_global = max_iters.load();
    return result;
}

}  // namespace linsep
