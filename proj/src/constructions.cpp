#include "linsep/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "linsep/network.hpp"

namespace linsep {

LabeledDataset adversarial_sequence(int dim) {
    if (dim < 1) throw std::invalid_argument("adversarial_sequence: d must be >= 1");
    std::vector<Example> examples;
    examples.reserve(dim);
    for (int j = 0; j < dim; ++j) {
        Example ex;
        ex.x.assign(dim, 0.0);
        ex.x[j] = 1.0;
        ex.y = 1;
        examples.push_back(std::move(ex));
    }
    return LabeledDataset(std::move(examples), std::vector<double>(dim, 1.0));
}

NetworkParams adversarial_init(int k, int dim, double row_radius, double out_scale,
                               const ActivationKind& activation) {
    if (k < 1 || dim < 1) throw std::invalid_argument("adversarial_init: k and d must be >= 1");
    if (!(row_radius > 0.0)) throw std::invalid_argument("adversarial_init: R must be positive");
    const double entry = row_radius / std::sqrt(static_cast<double>(dim));
    Matrix W(2 * k, dim);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < dim; ++j) {
            W(i, j) = -entry;
            W(k + i, j) = entry;
        }
    return NetworkParams(std::move(W), out_scale, activation);
}

LabeledDataset orthogonal_dataset(int dim) { return adversarial_sequence(dim); }

BadLocalMin relu_bad_local_min(const LabeledDataset& dataset, int k, Rng& rng) {
    if (dataset.empty()) throw std::invalid_argument("relu_bad_local_min: empty dataset");
    if (k < 1) throw std::invalid_argument("relu_bad_local_min: k must be >= 1");
    if (!dataset.separator())
        throw std::invalid_argument("relu_bad_local_min: dataset must carry a separator");
    const auto& wstar = *dataset.separator();
    const int d = dataset.dim();
    const std::size_t n = dataset.size();

    // A direction off every hyperplane <.,x> = 0, oriented so the strict
    // majority of examples sit on its negative side. Ties between the two
    // orientations force a resample.
    constexpr int kRetryCap = 100;
    std::vector<double> w_hat;
    double min_abs = 0.0;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= kRetryCap)
            throw std::runtime_error("relu_bad_local_min: no strict-majority direction found");
        w_hat = rng.unit_sphere(d);
        min_abs = std::numeric_limits<double>::infinity();
        std::size_t negatives = 0;
        for (const auto& ex : dataset.examples()) {
            const double ip = dot(w_hat, ex.x);
            min_abs = std::min(min_abs, std::abs(ip));
            if (ip < 0.0) ++negatives;
        }
        if (min_abs == 0.0) continue;
        if (2 * negatives > n) break;
        if (2 * (n - negatives) > n) {
            for (auto& c : w_hat) c = -c;
            break;
        }
    }

    const double alpha_prime = min_abs / 2.0;
    const double c = 2.0 * norm(wstar) / alpha_prime;
    Matrix W(2 * k, d);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < d; ++j) {
            W(i, j) = c * w_hat[j] + wstar[j];
            W(k + i, j) = c * w_hat[j] - wstar[j];
        }
    NetworkParams params(std::move(W), 1.0, ActivationKind::relu());

    // Minimum slack over (a) pre-activation magnitudes, whose signs must not
    // flip, and (b) margin distance to 1 on the satisfied examples.
    double min_slack = std::numeric_limits<double>::infinity();
    for (const auto& ex : dataset.examples()) {
        for (int r = 0; r < 2 * k; ++r)
            min_slack = std::min(min_slack, std::abs(dot(params.weights().row(r), ex.x)));
        const double margin = ex.y * forward(params, ex.x);
        if (margin >= 1.0) min_slack = std::min(min_slack, margin - 1.0);
    }
    return BadLocalMin{std::move(params), min_slack / (4.0 * k)};
}

DeadSet compute_dead_set(const NetworkParams& params) {
    if (!params.activation().is_relu())
        throw std::invalid_argument("compute_dead_set: requires ReLU activation");
    DeadSet dead;
    for (int j = 0; j < params.dim(); ++j) {
        bool all_nonpositive = true;
        for (int i = 0; i < params.units(); ++i) {
            if (params.weights()(i, j) > 0.0) {
                all_nonpositive = false;
                break;
            }
        }
        if (all_nonpositive) dead.indices.insert(j);
    }
    return dead;
}

ReluOutcome predict_relu_outcome(const NetworkParams& params) {
    return compute_dead_set(params).indices.empty() ? ReluOutcome::global : ReluOutcome::nonglobal;
}

std::string to_string(ReluOutcome outcome) {
    return outcome == ReluOutcome::global ? "global" : "nonglobal";
}

double orthogonal_nonglobal_probability(int dim, int k) {
    if (dim < 1 || k < 1)
        throw std::invalid_argument("orthogonal_nonglobal_probability: d and k must be >= 1");
    return 1.0 - std::pow(1.0 - std::pow(2.0, -k), dim);
}

NetworkParams with_random_perturbation(const NetworkParams& params, double max_frobenius_norm, Rng& rng) {
    if (!(max_frobenius_norm > 0.0))
        throw std::invalid_argument("with_random_perturbation: radius must be positive");
    NetworkParams out = params;
    Matrix delta(params.weights().rows(), params.weights().cols());
    for (int r = 0; r < delta.rows(); ++r)
        for (int c = 0; c < delta.cols(); ++c) delta(r, c) = rng.gaussian();
    const double scale = max_frobenius_norm * rng.unit() / std::max(delta.frobenius_norm(), 1e-300);
    Matrix& W = out.mutable_weights();
    for (int r = 0; r < W.rows(); ++r)
        for (int c = 0; c < W.cols(); ++c) W(r, c) += scale * delta(r, c);
    return out;
}

}  // namespace linsep
