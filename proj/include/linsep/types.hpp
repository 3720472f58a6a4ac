#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linsep/matrix.hpp"

namespace linsep {

inline constexpr double kExampleNormTol = 1e-12;
inline constexpr double kSeparatorMarginTol = 1e-9;

/// One labeled point: ||x|| <= 1, y in {-1, +1}.
struct Example {
    std::vector<double> x;
    int y = 1;
};

/// Ordered list of examples of a common dimension, optionally carrying a
/// separator w* under which every example has margin y<w*,x> >= 1.
/// Construction validates all invariants; instances are immutable afterwards.
class LabeledDataset {
public:
    LabeledDataset() = default;
    LabeledDataset(std::vector<Example> examples, std::optional<std::vector<double>> separator = std::nullopt);

    std::size_t size() const { return examples_.size(); }
    bool empty() const { return examples_.empty(); }
    int dim() const { return dim_; }
    const Example& operator[](std::size_t i) const { return examples_[i]; }
    const std::vector<Example>& examples() const { return examples_; }
    const std::optional<std::vector<double>>& separator() const { return separator_; }

private:
    std::vector<Example> examples_;
    std::optional<std::vector<double>> separator_;
    int dim_ = 0;
};

/// Activation: LeakyReLU max{alpha*z, z} with 0 < alpha < 1, or ReLU max{0, z}.
class ActivationKind {
public:
    static ActivationKind leaky_relu(double alpha);
    static ActivationKind relu() { return ActivationKind(true, 0.0); }

    bool is_relu() const { return is_relu_; }
    double alpha() const { return alpha_; }
    std::string name() const { return is_relu_ ? "relu" : "leaky_relu"; }

    bool operator==(const ActivationKind&) const = default;

private:
    ActivationKind(bool is_relu, double alpha) : is_relu_(is_relu), alpha_(alpha) {}
    bool is_relu_ = false;
    double alpha_ = 0.0;
};

/// Two-layer network state: first-layer weights W (2k x d; rows 1..k feed the
/// +v outputs, rows k+1..2k the -v outputs) and the fixed second-layer scale
/// v > 0. Construction validates shape and positivity.
class NetworkParams {
public:
    NetworkParams(Matrix weights, double out_scale, ActivationKind activation);

    const Matrix& weights() const { return weights_; }
    double out_scale() const { return out_scale_; }
    int units() const { return units_; }  // k
    int dim() const { return weights_.cols(); }
    const ActivationKind& activation() const { return activation_; }

    std::span<const double> w_row(int i) const { return weights_.row(i); }
    std::span<const double> u_row(int i) const { return weights_.row(units_ + i); }

    /// Trainer-facing mutable access; everything else treats params as frozen.
    Matrix& mutable_weights() { return weights_; }

private:
    Matrix weights_;
    double out_scale_;
    int units_;
    ActivationKind activation_;
};

enum class SamplingOrder { uniform_with_replacement, cyclic };

struct TrainConfig {
    double learning_rate = 0.01;
    int max_epochs = 1000;
    SamplingOrder order = SamplingOrder::uniform_with_replacement;
    std::uint64_t seed = 0;
    double margin_tol = 1e-9;
    bool record_trajectory = false;
};

enum class RunStatus { global_min, nonglobal_stall, epoch_limit };

std::string to_string(RunStatus status);
std::string to_string(SamplingOrder order);
SamplingOrder sampling_order_from_string(const std::string& name);

/// Potential-function diagnostics after a non-zero update: F = <vec(W), vec(W*)>,
/// G = ||vec(W)||, cosine = F / (G * sqrt(2k) * ||w*||).
struct TrajectoryPoint {
    std::int64_t t = 0;
    double F = 0.0;
    double G = 0.0;
    double cosine = 0.0;
};

struct EpochStats {
    int epoch = 0;
    double hinge_loss = 0.0;
    double zero_one_train_error = 0.0;
    std::optional<double> zero_one_test_error;
};

struct RunRecord {
    std::int64_t nonzero_updates = 0;
    RunStatus status = RunStatus::epoch_limit;
    std::vector<EpochStats> epoch_stats;
    std::optional<std::vector<TrajectoryPoint>> trajectory;
};

}  // namespace linsep
