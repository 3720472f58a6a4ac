#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace linsep {

/// Worst-case cap on the number of non-zero SGD updates for LeakyReLU and
/// rows initialized with norm at most R:
///   ||w*||^2/alpha^2 + ||w*||^2/(k eta v^2 alpha^2)
///   + sqrt(R(8 k^2 eta^2 v^2 + 8 eta k)) ||w*||^1.5 / (2k (eta v alpha)^1.5)
///   + 2 R ||w*|| / (eta v alpha).
/// Requires norm_wstar >= 1 (a margin-1 separator cannot be shorter).
double nonzero_update_cap(double norm_wstar, double alpha, double eta, int k, double v, double R);

/// Same cap with the R = v = 1/sqrt(2k) initialization substituted.
double nonzero_update_cap_default_init(double norm_wstar, double alpha, double eta, int k);

/// Adversarial-sequence floor on non-zero updates:
/// max{min{B1, B2}, ||w*||^2} with
///   B1 = R||w*||/(eta v alpha) + min{||w*||^2/(2 eta k v^2) - alpha ||w*||^2, 0}
///   B2 = R||w*||/(eta v)       + min{||w*||^2/(2 alpha^2 eta k v^2) - ||w*||^2/alpha, 0}.
/// B1's subtracted term is the quadratic alpha*||w*||^2; a linear
/// alpha*||w*|| variant of this bound also circulates. See lower_bound_report.
double lower_bound(double norm_wstar, double alpha, double eta, int k, double v, double R);

/// 0-1 compression bound L_V + sqrt(L_V * 4 c_k log(n/delta) / n)
/// + 8 c_k log(n/delta) / n with the natural logarithm. Requires n >= 2 c_k.
double compression_bound(std::int64_t c_k, std::int64_t n, double delta, double L_V);

/// compression_bound(ceil(nonzero_update_cap(...)), n, delta, 0).
double generalization_global_min(double norm_wstar, double alpha, double eta, int k, double v, double R,
                                 std::int64_t n, double delta);

/// ReLU-on-orthogonal-basis size thresholds:
/// k <= log2(d / (-ln delta)) fails w.p. >= 1-delta;
/// k >= log2(2d / delta) succeeds w.p. >= 1-delta.
struct ReluThresholds {
    double k_fail = 0.0;
    double k_succeed = 0.0;
};
ReluThresholds relu_thresholds(int d, double delta);

/// Iteration cap for the success case: ceil(max{dC/eta, d/eta}).
std::int64_t relu_iteration_bound(int d, double C, double eta);

enum class BoundFormula {
    mk,
    lower_bound,
    compression,
    generalization_global_min,
    relu_k_fail,
    relu_k_succeed,
    relu_iteration
};

std::string to_string(BoundFormula formula);

/// A bound evaluation with its inputs echoed, for reports and summary files.
/// Values are clamped at zero (negative thresholds mean an empty regime and
/// are noted), so value >= 0 always holds.
struct BoundReport {
    BoundFormula formula;
    std::map<std::string, double> inputs;
    double value = 0.0;
    std::vector<std::string> notes;
};

BoundReport update_cap_report(double norm_wstar, double alpha, double eta, int k, double v, double R);
BoundReport lower_bound_report(double norm_wstar, double alpha, double eta, int k, double v, double R);
BoundReport compression_report(std::int64_t c_k, std::int64_t n, double delta, double L_V);
BoundReport generalization_report(double norm_wstar, double alpha, double eta, int k, double v, double R,
                                  std::int64_t n, double delta);
std::vector<BoundReport> relu_threshold_reports(int d, double delta);
BoundReport relu_iteration_report(int d, double C, double eta);

}  // namespace linsep
