#pragma once

#include <span>

#include "linsep/types.hpp"

namespace linsep {

/// sigma(z): max{alpha*z, z} for LeakyReLU, max{0, z} for ReLU.
double activation(double z, const ActivationKind& kind);

/// Subgradient slope at a pre-activation. Conventions at exactly zero:
/// LeakyReLU uses slope 1 (>= 0 branch), ReLU uses slope 0 (> 0 branch).
double activation_slope(double preactivation, const ActivationKind& kind);

/// N(x) = v * (sum_i sigma(<w_i, x>) - sum_i sigma(<u_i, x>)).
double forward(const NetworkParams& params, std::span<const double> x);

/// Same, also filling the 2k pre-activations W x (resized as needed) so the
/// caller can reuse them for slopes without a second pass over W.
double forward(const NetworkParams& params, std::span<const double> x, std::vector<double>& preacts);

/// Mean hinge loss (1/n) * sum max{1 - y_i N(x_i), 0}. Errors on empty data.
double hinge_loss(const NetworkParams& params, const LabeledDataset& dataset);

/// Fraction of examples misclassified by sign(N(x)), where N(x) = 0 predicts +1.
double zero_one_error(const NetworkParams& params, const LabeledDataset& dataset);

/// Subgradient of the single-example hinge loss with respect to W.
/// Active (y*N(x) < 1): w-row i is -v*p_i*y*x, u-row i is +v*q_i*y*x, with
/// p_i/q_i the activation_slope of the corresponding pre-activation.
/// Inactive: exactly the zero matrix.
struct SubgradientReport {
    Matrix grad;
    bool active = false;
    std::vector<double> slopes_p;
    std::vector<double> slopes_q;
};
SubgradientReport subgradient(const NetworkParams& params, const Example& example);

/// True iff the single-example subgradient is a nonzero matrix, without
/// materializing it.
bool has_nonzero_subgradient(const NetworkParams& params, const Example& example);

/// Mean of the per-example subgradients over the dataset.
Matrix batch_subgradient(const NetworkParams& params, const LabeledDataset& dataset);

struct CriticalPointReport {
    bool is_critical = false;  // full-batch mean subgradient norm <= tol
    bool is_global = false;    // every margin y*N(x) >= 1 - tol
};
CriticalPointReport critical_point_report(const NetworkParams& params, const LabeledDataset& dataset,
                                          double tol);

/// Midpoint-convexity violation of f(w, u) = sigma(<w,x>) - sigma(<u,x>):
/// f at (x, x), at (x, -x), and at the midpoint arguments (x, 0), which come
/// out to 0, (1+alpha)*||x||^2 and ||x||^2. The midpoint value strictly
/// exceeds the chord average for every alpha < 1.
struct NonconvexityWitness {
    double f_endpoint_a = 0.0;
    double f_endpoint_b = 0.0;
    double f_midpoint = 0.0;
};
NonconvexityWitness nonconvexity_witness(std::span<const double> x, double alpha);

}  // namespace linsep
