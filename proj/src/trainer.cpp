#include "linsep/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linsep {

InitScheme InitScheme::balanced_default() { return InitScheme(Kind::balanced_default); }

InitScheme InitScheme::bounded_rows(double row_radius, double out_scale) {
    if (!(row_radius > 0.0)) throw std::invalid_argument("bounded_rows: R must be positive");
    if (!(out_scale > 0.0)) throw std::invalid_argument("bounded_rows: v must be positive");
    InitScheme s(Kind::bounded_rows);
    s.row_radius_ = row_radius;
    s.out_scale_ = out_scale;
    return s;
}

InitScheme InitScheme::symmetric_box(double box_half_width) {
    if (box_half_width < 0.0) throw std::invalid_argument("symmetric_box: C must be nonnegative");
    InitScheme s(Kind::symmetric_box);
    s.box_half_width_ = box_half_width;
    s.out_scale_ = 1.0;
    return s;
}

InitScheme InitScheme::explicit_weights(Matrix weights, double out_scale) {
    InitScheme s(Kind::explicit_weights);
    s.weights_ = std::move(weights);
    s.out_scale_ = out_scale;
    return s;
}

NetworkParams initialize(const InitScheme& scheme, int k, int d, const ActivationKind& activation,
                         Rng& rng) {
    if (k < 1 || d < 1) throw std::invalid_argument("initialize: k and d must be >= 1");
    switch (scheme.kind()) {
        case InitScheme::Kind::balanced_default:
        case InitScheme::Kind::bounded_rows: {
            const bool is_default = scheme.kind() == InitScheme::Kind::balanced_default;
            const double R = is_default ? 1.0 / std::sqrt(2.0 * k) : scheme.row_radius();
            const double v = is_default ? R : scheme.out_scale();
            Matrix W(2 * k, d);
            for (int r = 0; r < 2 * k; ++r) {
                auto row = rng.in_ball(d, R);
                for (int c = 0; c < d; ++c) W(r, c) = row[c];
            }
            return NetworkParams(std::move(W), v, activation);
        }
        case InitScheme::Kind::symmetric_box: {
            Matrix W(2 * k, d);
            const double C = scheme.box_half_width();
            for (int r = 0; r < 2 * k; ++r)
                for (int c = 0; c < d; ++c) W(r, c) = C == 0.0 ? 0.0 : rng.uniform(-C, C);
            return NetworkParams(std::move(W), 1.0, activation);
        }
        case InitScheme::Kind::explicit_weights: {
            const Matrix& W = scheme.weights();
            if (W.rows() != 2 * k || W.cols() != d)
                throw std::invalid_argument("initialize: explicit weights shape must be 2k x d");
            return NetworkParams(W, scheme.out_scale(), activation);
        }
    }
    throw std::logic_error("initialize: unreachable");
}

bool sgd_step_inplace(NetworkParams& params, const Example& example, double learning_rate) {
    if (static_cast<int>(example.x.size()) != params.dim())
        throw std::invalid_argument("sgd_step: input dimension mismatch");
    static thread_local std::vector<double> preacts;
    if (example.y * forward(params, example.x, preacts) >= 1.0) return false;

    const int k = params.units();
    const int d = params.dim();
    const double v = params.out_scale();
    Matrix& W = params.mutable_weights();
    bool nonzero = false;
    for (int i = 0; i < 2 * k; ++i) {
        const double slope = activation_slope(preacts[i], params.activation());
        if (slope == 0.0) continue;
        // W_t = W_{t-1} - eta * grad; the w-row gradient is -v*p*y*x and the
        // u-row gradient is +v*q*y*x.
        const double c = (i < k ? 1.0 : -1.0) * learning_rate * v * slope * example.y;
        auto row = W.row(i);
        for (int j = 0; j < d; ++j) {
            const double dx = example.x[j];
            if (dx == 0.0) continue;
            row[j] += c * dx;
            nonzero = true;
        }
    }
    return nonzero;
}

std::pair<NetworkParams, bool> sgd_step(const NetworkParams& params, const Example& example,
                                        double learning_rate) {
    NetworkParams next = params;
    bool nonzero = sgd_step_inplace(next, example, learning_rate);
    return {std::move(next), nonzero};
}

double potential_F(const NetworkParams& params, std::span<const double> separator) {
    double f = 0.0;
    for (int i = 0; i < params.units(); ++i) {
        f += dot(params.w_row(i), separator);
        f -= dot(params.u_row(i), separator);
    }
    return f;
}

double potential_G(const NetworkParams& params) { return params.weights().frobenius_norm(); }

namespace {

TrajectoryPoint make_point(std::int64_t t, const NetworkParams& params,
                           std::span<const double> separator) {
    TrajectoryPoint pt;
    pt.t = t;
    pt.F = potential_F(params, separator);
    pt.G = potential_G(params);
    const double denom = pt.G * std::sqrt(2.0 * params.units()) * norm(separator);
    pt.cosine = denom == 0.0 ? 0.0 : pt.F / denom;
    return pt;
}

// One pass over the training set giving both the per-epoch statistics and
// the convergence-sweep verdicts.
struct EpochEval {
    double hinge = 0.0;
    double err01 = 0.0;
    bool all_margins_ok = true;
    bool any_nonzero_grad = false;
};

EpochEval evaluate_epoch(const NetworkParams& params, const LabeledDataset& data, double margin_tol) {
    EpochEval eval;
    static thread_local std::vector<double> preacts;
    const bool relu = params.activation().is_relu();
    std::size_t mistakes = 0;
    for (const auto& ex : data.examples()) {
        const double out = relu ? forward(params, ex.x, preacts) : forward(params, ex.x);
        const double margin = ex.y * out;
        eval.hinge += std::max(1.0 - margin, 0.0);
        if ((out >= 0.0 ? 1 : -1) != ex.y) ++mistakes;
        if (margin < 1.0 - margin_tol) eval.all_margins_ok = false;
        if (!eval.any_nonzero_grad && margin < 1.0) {
            bool some_x = std::any_of(ex.x.begin(), ex.x.end(), [](double v) { return v != 0.0; });
            if (some_x) {
                if (!relu) {
                    eval.any_nonzero_grad = true;
                } else {
                    eval.any_nonzero_grad =
                        std::any_of(preacts.begin(), preacts.end(), [&](double z) {
                            return activation_slope(z, params.activation()) != 0.0;
                        });
                }
            }
        }
    }
    eval.hinge /= static_cast<double>(data.size());
    eval.err01 = static_cast<double>(mistakes) / static_cast<double>(data.size());
    return eval;
}

}  // namespace

RunRecord train(const NetworkParams& initial, const LabeledDataset& train_set, const TrainConfig& config,
                const LabeledDataset* test_set, const StepObserver& observer) {
    if (train_set.empty()) throw std::invalid_argument("train: empty dataset");
    if (!(config.learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be positive");
    if (config.max_epochs < 1) throw std::invalid_argument("train: max_epochs must be >= 1");
    if (config.margin_tol < 0.0) throw std::invalid_argument("train: margin_tol must be >= 0");

    NetworkParams params = initial;
    Rng rng(config.seed);
    RunRecord record;
    const bool tracking = config.record_trajectory && train_set.separator().has_value();
    if (tracking) {
        record.trajectory.emplace();
        record.trajectory->push_back(make_point(0, params, *train_set.separator()));
    }

    auto eval_and_record = [&](int epoch) {
        EpochEval eval = evaluate_epoch(params, train_set, config.margin_tol);
        EpochStats stats;
        stats.epoch = epoch;
        stats.hinge_loss = eval.hinge;
        stats.zero_one_train_error = eval.err01;
        if (test_set != nullptr && !test_set->empty())
            stats.zero_one_test_error = zero_one_error(params, *test_set);
        record.epoch_stats.push_back(stats);
        return eval;
    };

    auto initial_eval = eval_and_record(0);
    if (initial_eval.all_margins_ok) {
        record.status = RunStatus::global_min;
        return record;
    }
    if (!initial_eval.any_nonzero_grad) {
        record.status = RunStatus::nonglobal_stall;
        return record;
    }

    const std::size_t n = train_set.size();
    std::int64_t step = 0;
    record.status = RunStatus::epoch_limit;
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t idx = config.order == SamplingOrder::cyclic ? s : rng.index(n);
            const bool was_nonzero = sgd_step_inplace(params, train_set[idx], config.learning_rate);
            ++step;
            if (was_nonzero) {
                ++record.nonzero_updates;
                if (tracking)
                    record.trajectory->push_back(
                        make_point(record.nonzero_updates, params, *train_set.separator()));
            }
            if (observer) observer(params, step, was_nonzero);
        }
        auto eval = eval_and_record(epoch);
        if (eval.all_margins_ok) {
            record.status = RunStatus::global_min;
            break;
        }
        if (!eval.any_nonzero_grad) {
            record.status = RunStatus::nonglobal_stall;
            break;
        }
    }
    return record;
}

std::vector<TrajectoryPoint> trajectory_diagnostics(std::span<const NetworkParams> history,
                                                    std::span<const double> separator) {
    std::vector<TrajectoryPoint> points;
    points.reserve(history.size());
    std::int64_t t = 0;
    for (const auto& params : history) {
        if (static_cast<int>(separator.size()) != params.dim())
            throw std::invalid_argument("trajectory_diagnostics: separator dimension mismatch");
        points.push_back(make_point(t++, params, separator));
    }
    return points;
}

}  // namespace linsep
