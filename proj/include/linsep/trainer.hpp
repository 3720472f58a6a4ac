#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "linsep/network.hpp"
#include "linsep/rng.hpp"
#include "linsep/types.hpp"

namespace linsep {

/// How W_0 and v are chosen.
///   balanced_default: R = v = 1/sqrt(2k), rows uniform in the radius-R ball.
///   bounded_rows(R, v): rows uniform in the radius-R ball.
///   symmetric_box(C):   entries uniform on [-C, C], v = 1.
///   explicit_weights:   caller-provided W and v.
class InitScheme {
public:
    enum class Kind { balanced_default, bounded_rows, symmetric_box, explicit_weights };

    static InitScheme balanced_default();
    static InitScheme bounded_rows(double row_radius, double out_scale);
    static InitScheme symmetric_box(double box_half_width);
    static InitScheme explicit_weights(Matrix weights, double out_scale);

    Kind kind() const { return kind_; }
    double row_radius() const { return row_radius_; }
    double out_scale() const { return out_scale_; }
    double box_half_width() const { return box_half_width_; }
    const Matrix& weights() const { return weights_; }

private:
    explicit InitScheme(Kind kind) : kind_(kind) {}
    Kind kind_;
    double row_radius_ = 0.0;
    double out_scale_ = 1.0;
    double box_half_width_ = 0.0;
    Matrix weights_;
};

NetworkParams initialize(const InitScheme& scheme, int k, int d, const ActivationKind& activation,
                         Rng& rng);

/// One SGD step on one example. Returns the new params and whether the
/// subgradient was a nonzero matrix.
std::pair<NetworkParams, bool> sgd_step(const NetworkParams& params, const Example& example,
                                        double learning_rate);

/// In-place variant used by the training loop.
bool sgd_step_inplace(NetworkParams& params, const Example& example, double learning_rate);

/// Called after every SGD step (zero or not) with the current params.
using StepObserver = std::function<void(const NetworkParams& params, std::int64_t step, bool was_nonzero)>;

/// Batch-size-1 SGD until a full deterministic sweep certifies a global
/// minimum (every margin >= 1 - margin_tol), a sweep finds zero nonzero
/// subgradients with some margin still short (nonglobal_stall), or max_epochs
/// elapse. Trajectory points are recorded per nonzero update when
/// config.record_trajectory is set and the dataset carries a separator.
RunRecord train(const NetworkParams& initial, const LabeledDataset& train_set, const TrainConfig& config,
                const LabeledDataset* test_set = nullptr, const StepObserver& observer = {});

/// Potential diagnostics for a recorded weight history against a margin-1
/// separator w*: F = <vec(W), vec(W*)>, G = ||vec(W)||_F and their
/// Cauchy-Schwarz cosine (0 when G = 0), using ||vec(W*)|| = sqrt(2k)*||w*||.
std::vector<TrajectoryPoint> trajectory_diagnostics(std::span<const NetworkParams> history,
                                                    std::span<const double> separator);

/// F and G of a single parameter state (helpers for incremental recording).
double potential_F(const NetworkParams& params, std::span<const double> separator);
double potential_G(const NetworkParams& params);

}  // namespace linsep
