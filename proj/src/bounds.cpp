#include "linsep/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linsep {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

void check_common(double norm_wstar, double alpha, double eta, int k, double v, double R) {
    require(alpha > 0.0 && alpha < 1.0, "bounds: alpha must lie in (0, 1)");
    require(eta > 0.0, "bounds: eta must be positive");
    require(k >= 1, "bounds: k must be >= 1");
    require(v > 0.0, "bounds: v must be positive");
    require(R > 0.0, "bounds: R must be positive");
    require(norm_wstar >= 0.0, "bounds: ||w*|| must be nonnegative");
}

}  // namespace

double nonzero_update_cap(double norm_wstar, double alpha, double eta, int k, double v, double R) {
    check_common(norm_wstar, alpha, eta, k, v, R);
    require(norm_wstar >= 1.0, "nonzero_update_cap: ||w*|| must be >= 1");
    const double w = norm_wstar;
    const double t1 = w * w / (alpha * alpha);
    const double t2 = w * w / (k * eta * v * v * alpha * alpha);
    const double t3 = std::sqrt(R * (8.0 * k * k * eta * eta * v * v + 8.0 * eta * k)) *
                      std::pow(w, 1.5) / (2.0 * k * std::pow(eta * v * alpha, 1.5));
    const double t4 = 2.0 * R * w / (eta * v * alpha);
    return t1 + t2 + t3 + t4;
}

double nonzero_update_cap_default_init(double norm_wstar, double alpha, double eta, int k) {
    const double rv = 1.0 / std::sqrt(2.0 * k);
    return nonzero_update_cap(norm_wstar, alpha, eta, k, rv, rv);
}

double lower_bound(double norm_wstar, double alpha, double eta, int k, double v, double R) {
    check_common(norm_wstar, alpha, eta, k, v, R);
    const double w = norm_wstar;
    const double b1 =
        R * w / (eta * v * alpha) + std::min(w * w / (2.0 * eta * k * v * v) - alpha * w * w, 0.0);
    const double b2 = R * w / (eta * v) +
                      std::min(w * w / (2.0 * alpha * alpha * eta * k * v * v) - w * w / alpha, 0.0);
    return std::max(std::min(b1, b2), w * w);
}

double compression_bound(std::int64_t c_k, std::int64_t n, double delta, double L_V) {
    require(c_k >= 0, "compression_bound: c_k must be >= 0");
    require(n >= 1, "compression_bound: n must be >= 1");
    require(delta > 0.0 && delta < 1.0, "compression_bound: delta must lie in (0, 1)");
    require(L_V >= 0.0 && L_V <= 1.0, "compression_bound: L_V must lie in [0, 1]");
    require(n >= 2 * c_k, "compression_bound: requires n >= 2 c_k");
    const double tail = 4.0 * static_cast<double>(c_k) *
                        std::log(static_cast<double>(n) / delta) / static_cast<double>(n);
    return L_V + std::sqrt(L_V * tail) + 2.0 * tail;
}

double generalization_global_min(double norm_wstar, double alpha, double eta, int k, double v, double R,
                                 std::int64_t n, double delta) {
    const auto c_k = static_cast<std::int64_t>(std::ceil(nonzero_update_cap(norm_wstar, alpha, eta, k, v, R)));
    require(n >= 2 * c_k, "generalization_global_min: requires n >= 2 ceil(M_k)");
    return compression_bound(c_k, n, delta, 0.0);
}

ReluThresholds relu_thresholds(int d, double delta) {
    require(d >= 1, "relu_thresholds: d must be >= 1");
    require(delta > 0.0 && delta < 1.0, "relu_thresholds: delta must lie in (0, 1)");
    ReluThresholds t;
    t.k_fail = std::log2(static_cast<double>(d) / (-std::log(delta)));
    t.k_succeed = std::log2(2.0 * static_cast<double>(d) / delta);
    return t;
}

std::int64_t relu_iteration_bound(int d, double C, double eta) {
    require(d >= 1, "relu_iteration_bound: d must be >= 1");
    require(C > 0.0, "relu_iteration_bound: C must be positive");
    require(eta > 0.0, "relu_iteration_bound: eta must be positive");
    const double value = std::max(d * C / eta, d / eta);
    return static_cast<std::int64_t>(std::ceil(value));
}

std::string to_string(BoundFormula formula) {
    switch (formula) {
        case BoundFormula::mk: return "Mk";
        case BoundFormula::lower_bound: return "LowerBound";
        case BoundFormula::compression: return "Compression";
        case BoundFormula::generalization_global_min: return "GeneralizationGlobalMin";
        case BoundFormula::relu_k_fail: return "ReluKFail";
        case BoundFormula::relu_k_succeed: return "ReluKSucceed";
        case BoundFormula::relu_iteration: return "ReluIterBound";
    }
    return "unknown";
}

namespace {

BoundReport make_report(BoundFormula formula, std::map<std::string, double> inputs, double value) {
    BoundReport report;
    report.formula = formula;
    report.inputs = std::move(inputs);
    report.value = value;
    if (value < 0.0) {
        report.value = 0.0;
        report.notes.push_back("raw value " + std::to_string(value) + " clamped to 0 (empty regime)");
    }
    return report;
}

}  // namespace

BoundReport update_cap_report(double norm_wstar, double alpha, double eta, int k, double v, double R) {
    return make_report(BoundFormula::mk,
                       {{"norm_wstar", norm_wstar},
                        {"alpha", alpha},
                        {"eta", eta},
                        {"k", static_cast<double>(k)},
                        {"v", v},
                        {"R", R}},
                       nonzero_update_cap(norm_wstar, alpha, eta, k, v, R));
}

BoundReport lower_bound_report(double norm_wstar, double alpha, double eta, int k, double v, double R) {
    auto report = make_report(BoundFormula::lower_bound,
                              {{"norm_wstar", norm_wstar},
                               {"alpha", alpha},
                               {"eta", eta},
                               {"k", static_cast<double>(k)},
                               {"v", v},
                               {"R", R}},
                              lower_bound(norm_wstar, alpha, eta, k, v, R));
    report.notes.push_back(
        "B1 subtracts alpha*||w*||^2 (quadratic variant); a linear alpha*||w*|| variant exists");
    return report;
}

BoundReport compression_report(std::int64_t c_k, std::int64_t n, double delta, double L_V) {
    auto report = make_report(BoundFormula::compression,
                              {{"c_k", static_cast<double>(c_k)},
                               {"n", static_cast<double>(n)},
                               {"delta", delta},
                               {"L_V", L_V}},
                              compression_bound(c_k, n, delta, L_V));
    report.notes.push_back("log is the natural logarithm");
    return report;
}

BoundReport generalization_report(double norm_wstar, double alpha, double eta, int k, double v, double R,
                                  std::int64_t n, double delta) {
    return make_report(BoundFormula::generalization_global_min,
                       {{"norm_wstar", norm_wstar},
                        {"alpha", alpha},
                        {"eta", eta},
                        {"k", static_cast<double>(k)},
                        {"v", v},
                        {"R", R},
                        {"n", static_cast<double>(n)},
                        {"delta", delta}},
                       generalization_global_min(norm_wstar, alpha, eta, k, v, R, n, delta));
}

std::vector<BoundReport> relu_threshold_reports(int d, double delta) {
    const auto t = relu_thresholds(d, delta);
    std::map<std::string, double> inputs{{"d", static_cast<double>(d)}, {"delta", delta}};
    return {make_report(BoundFormula::relu_k_fail, inputs, t.k_fail),
            make_report(BoundFormula::relu_k_succeed, inputs, t.k_succeed)};
}

BoundReport relu_iteration_report(int d, double C, double eta) {
    return make_report(BoundFormula::relu_iteration,
                       {{"d", static_cast<double>(d)}, {"C", C}, {"eta", eta}},
                       static_cast<double>(relu_iteration_bound(d, C, eta)));
}

}  // namespace linsep
