#include "linsep/types.hpp"

#include <stdexcept>

namespace linsep {

LabeledDataset::LabeledDataset(std::vector<Example> examples, std::optional<std::vector<double>> separator)
    : examples_(std::move(examples)), separator_(std::move(separator)) {
    if (!examples_.empty()) dim_ = static_cast<int>(examples_[0].x.size());
    for (const auto& ex : examples_) {
        if (static_cast<int>(ex.x.size()) != dim_)
            throw std::invalid_argument("LabeledDataset: examples of mixed dimension");
        if (ex.y != 1 && ex.y != -1)
            throw std::invalid_argument("LabeledDataset: label must be -1 or +1");
        if (norm(ex.x) > 1.0 + kExampleNormTol)
            throw std::invalid_argument("LabeledDataset: ||x|| exceeds 1");
    }
    if (separator_) {
        if (static_cast<int>(separator_->size()) != dim_)
            throw std::invalid_argument("LabeledDataset: separator dimension mismatch");
        for (const auto& ex : examples_) {
            if (ex.y * dot(ex.x, *separator_) < 1.0 - kSeparatorMarginTol)
                throw std::invalid_argument("LabeledDataset: separator margin below 1");
        }
    }
}

ActivationKind ActivationKind::leaky_relu(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("leaky_relu: alpha must lie in (0, 1)");
    return ActivationKind(false, alpha);
}

NetworkParams::NetworkParams(Matrix weights, double out_scale, ActivationKind activation)
    : weights_(std::move(weights)), out_scale_(out_scale), activation_(activation) {
    if (!(out_scale_ > 0.0)) throw std::invalid_argument("NetworkParams: v must be positive");
    if (weights_.rows() <= 0 || weights_.rows() % 2 != 0)
        throw std::invalid_argument("NetworkParams: weight matrix must have 2k rows");
    units_ = weights_.rows() / 2;
}

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::global_min: return "global_min";
        case RunStatus::nonglobal_stall: return "nonglobal_stall";
        case RunStatus::epoch_limit: return "epoch_limit";
    }
    return "unknown";
}

std::string to_string(SamplingOrder order) {
    return order == SamplingOrder::cyclic ? "cyclic" : "uniform_with_replacement";
}

SamplingOrder sampling_order_from_string(const std::string& name) {
    if (name == "cyclic") return SamplingOrder::cyclic;
    if (name == "uniform_with_replacement" || name == "uniform")
        return SamplingOrder::uniform_with_replacement;
    throw std::invalid_argument("unknown sampling order: " + name);
}

}  // namespace linsep
