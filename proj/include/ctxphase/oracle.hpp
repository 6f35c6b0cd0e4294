#pragma once

// Brute-force Born-rule reference: joint outcome distributions, textbook
// projective collapse, and exact operator contractions. Shares only the
// hilbert layer with the rest of the project so it can arbitrate the
// contextual pipeline's claims with its own projector arithmetic.

#include "ctxphase/hilbert.hpp"

namespace ctxphase::oracle {

// Probabilities over the four outcome pairs, indexed by sign: p(+1,+1),
// p(+1,-1), p(-1,+1), p(-1,-1).
struct JointDistribution {
  double p[2][2];  // [a][b], slot 0 = outcome +1, slot 1 = outcome -1

  double of(int a, int b) const { return p[a == 1 ? 0 : 1][b == 1 ? 0 : 1]; }
  double marginal_a(int a) const { return of(a, 1) + of(a, -1); }
  double marginal_b(int b) const { return of(1, b) + of(-1, b); }
  double correlation() const { return p[0][0] - p[0][1] - p[1][0] + p[1][1]; }
};

// Projector onto the +/-1 eigenspace of sigma_theta.
Operator2 polarizer_projector(double theta, int outcome);

// p(a, b) = <state| P_a(alpha) (x) P_b(beta) |state>.
JointDistribution born_joint(const TensorState& state, double alpha, double beta);

// Same, for arbitrary Hermitian +/-1 observables (projectors (I +/- obs)/2);
// lets tests check Y-frame claims that sigma_theta cannot express.
JointDistribution born_joint_obs(const TensorState& state, const Operator2& obs_a,
                                 const Operator2& obs_b);

// Exact contraction <state| sigma_alpha (x) sigma_beta |state>.
double oracle_correlation(const TensorState& state, double alpha, double beta);

// Conditions the state on seeing `outcome` at polarizer angle theta on one
// side and renormalizes. Throws std::domain_error when the outcome has
// (near-)zero probability.
TensorState textbook_collapse(const TensorState& state, Side side, double theta,
                              int outcome);

}  // namespace ctxphase::oracle
