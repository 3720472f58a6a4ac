#pragma once

#include <set>

#include "linsep/rng.hpp"
#include "linsep/types.hpp"

namespace linsep {

/// The worst-case sequence (e_1, +1), ..., (e_d, +1) with separator
/// w* = (1, ..., 1), so ||w*||^2 = d and every margin is exactly 1.
LabeledDataset adversarial_sequence(int dim);

/// Worst-case initialization for the adversarial sequence: every w-row is
/// -(R/sqrt(d)) * (1, ..., 1), every u-row its negation; row norms are
/// exactly R. The rows stay identical within each half under SGD.
NetworkParams adversarial_init(int k, int dim, double row_radius, double out_scale,
                               const ActivationKind& activation);

/// The same points as adversarial_sequence, in the role of the ReLU
/// orthogonal-basis task.
LabeledDataset orthogonal_dataset(int dim);

/// A ReLU parameter matrix that is a local minimum with hinge loss above 1/2:
/// all inner weights are c*w_hat +- w* for a direction w_hat that puts a
/// strict majority of the examples on its negative side. safe_eps is a radius
/// within which any per-row perturbation provably leaves every example's
/// activation signs and margin-vs-1 status unchanged (minimum slack / 4k).
struct BadLocalMin {
    NetworkParams params;
    double safe_eps = 0.0;
};
BadLocalMin relu_bad_local_min(const LabeledDataset& dataset, int k, Rng& rng);

/// Basis coordinates whose pre-activations are nonpositive for every w-row:
/// {j : for all i in [k], <w_i, e_j> <= 0}. Indices are 0-based.
struct DeadSet {
    std::set<int> indices;
};
DeadSet compute_dead_set(const NetworkParams& params);

/// On the orthogonal dataset, a ReLU run converges to a non-global minimum
/// iff the initial dead set is nonempty; the dead set never changes.
enum class ReluOutcome { global, nonglobal };
ReluOutcome predict_relu_outcome(const NetworkParams& params);

std::string to_string(ReluOutcome outcome);

/// P(K_0 nonempty) under any continuous symmetric entrywise init:
/// 1 - (1 - 2^-k)^d.
double orthogonal_nonglobal_probability(int dim, int k);

/// Copy of params with a random weight perturbation of Frobenius norm
/// strictly below max_frobenius_norm added.
NetworkParams with_random_perturbation(const NetworkParams& params, double max_frobenius_norm, Rng& rng);

}  // namespace linsep
