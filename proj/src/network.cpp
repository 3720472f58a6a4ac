#include "linsep/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linsep {

double activation(double z, const ActivationKind& kind) {
    if (kind.is_relu()) return std::max(0.0, z);
    return std::max(kind.alpha() * z, z);
}

double activation_slope(double preactivation, const ActivationKind& kind) {
    if (kind.is_relu()) return preactivation > 0.0 ? 1.0 : 0.0;
    return preactivation >= 0.0 ? 1.0 : kind.alpha();
}

double forward(const NetworkParams& params, std::span<const double> x) {
    if (static_cast<int>(x.size()) != params.dim())
        throw std::invalid_argument("forward: input dimension mismatch");
    const int k = params.units();
    double pos = 0.0, neg = 0.0;
    for (int i = 0; i < k; ++i) pos += activation(dot(params.w_row(i), x), params.activation());
    for (int i = 0; i < k; ++i) neg += activation(dot(params.u_row(i), x), params.activation());
    return params.out_scale() * (pos - neg);
}

double forward(const NetworkParams& params, std::span<const double> x, std::vector<double>& preacts) {
    if (static_cast<int>(x.size()) != params.dim())
        throw std::invalid_argument("forward: input dimension mismatch");
    const int k = params.units();
    preacts.resize(2 * static_cast<std::size_t>(k));
    double pos = 0.0, neg = 0.0;
    for (int i = 0; i < 2 * k; ++i) {
        const double z = dot(params.weights().row(i), x);
        preacts[i] = z;
        (i < k ? pos : neg) += activation(z, params.activation());
    }
    return params.out_scale() * (pos - neg);
}

double hinge_loss(const NetworkParams& params, const LabeledDataset& dataset) {
    if (dataset.empty()) throw std::invalid_argument("hinge_loss: empty dataset");
    double total = 0.0;
    for (const auto& ex : dataset.examples())
        total += std::max(1.0 - ex.y * forward(params, ex.x), 0.0);
    return total / static_cast<double>(dataset.size());
}

double zero_one_error(const NetworkParams& params, const LabeledDataset& dataset) {
    if (dataset.empty()) throw std::invalid_argument("zero_one_error: empty dataset");
    std::size_t mistakes = 0;
    for (const auto& ex : dataset.examples()) {
        int predicted = forward(params, ex.x) >= 0.0 ? 1 : -1;
        if (predicted != ex.y) ++mistakes;
    }
    return static_cast<double>(mistakes) / static_cast<double>(dataset.size());
}

SubgradientReport subgradient(const NetworkParams& params, const Example& example) {
    if (static_cast<int>(example.x.size()) != params.dim())
        throw std::invalid_argument("subgradient: input dimension mismatch");
    const int k = params.units();
    const int d = params.dim();
    SubgradientReport report;
    report.grad = Matrix(2 * k, d);
    report.active = example.y * forward(params, example.x) < 1.0;
    if (!report.active) return report;

    report.slopes_p.resize(k);
    report.slopes_q.resize(k);
    const double v = params.out_scale();
    for (int i = 0; i < k; ++i) {
        report.slopes_p[i] = activation_slope(dot(params.w_row(i), example.x), params.activation());
        report.slopes_q[i] = activation_slope(dot(params.u_row(i), example.x), params.activation());
        const double cw = -v * report.slopes_p[i] * example.y;
        const double cu = v * report.slopes_q[i] * example.y;
        for (int j = 0; j < d; ++j) {
            report.grad(i, j) = cw * example.x[j];
            report.grad(k + i, j) = cu * example.x[j];
        }
    }
    return report;
}

bool has_nonzero_subgradient(const NetworkParams& params, const Example& example) {
    bool some_x = std::any_of(example.x.begin(), example.x.end(), [](double v) { return v != 0.0; });
    if (!some_x) return false;
    // LeakyReLU slopes are never zero, so activity alone decides.
    if (!params.activation().is_relu())
        return example.y * forward(params, example.x) < 1.0;
    static thread_local std::vector<double> preacts;
    if (example.y * forward(params, example.x, preacts) >= 1.0) return false;
    return std::any_of(preacts.begin(), preacts.end(),
                       [&](double z) { return activation_slope(z, params.activation()) != 0.0; });
}

Matrix batch_subgradient(const NetworkParams& params, const LabeledDataset& dataset) {
    if (dataset.empty()) throw std::invalid_argument("batch_subgradient: empty dataset");
    Matrix mean(2 * params.units(), params.dim());
    for (const auto& ex : dataset.examples()) {
        auto report = subgradient(params, ex);
        if (!report.active) continue;
        for (int r = 0; r < mean.rows(); ++r)
            for (int c = 0; c < mean.cols(); ++c) mean(r, c) += report.grad(r, c);
    }
    const double inv_n = 1.0 / static_cast<double>(dataset.size());
    for (int r = 0; r < mean.rows(); ++r)
        for (int c = 0; c < mean.cols(); ++c) mean(r, c) *= inv_n;
    return mean;
}

CriticalPointReport critical_point_report(const NetworkParams& params, const LabeledDataset& dataset,
                                          double tol) {
    if (dataset.empty()) throw std::invalid_argument("critical_point_report: empty dataset");
    CriticalPointReport report;
    report.is_critical = batch_subgradient(params, dataset).frobenius_norm() <= tol;
    report.is_global = true;
    for (const auto& ex : dataset.examples()) {
        if (ex.y * forward(params, ex.x) < 1.0 - tol) {
            report.is_global = false;
            break;
        }
    }
    return report;
}

NonconvexityWitness nonconvexity_witness(std::span<const double> x, double alpha) {
    if (squared_norm(x) == 0.0) throw std::invalid_argument("nonconvexity_witness: x must be nonzero");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("nonconvexity_witness: alpha must lie in (0, 1)");
    const ActivationKind kind = ActivationKind::leaky_relu(alpha);
    const double xx = dot(x, x);
    auto f = [&](double wx, double ux) { return activation(wx, kind) - activation(ux, kind); };
    NonconvexityWitness w;
    w.f_endpoint_a = f(xx, xx);        // (w, u) = (x, x)
    w.f_endpoint_b = f(xx, -xx);       // (w, u) = (x, -x)
    w.f_midpoint = f(xx, 0.0);         // midpoint arguments (x, 0)
    return w;
}

}  // namespace linsep
