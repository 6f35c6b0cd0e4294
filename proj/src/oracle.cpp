#include "ctxphase/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace ctxphase::oracle {

Operator2 polarizer_projector(double theta, int outcome) {
  if (outcome != 1 && outcome != -1) {
    throw std::domain_error("polarizer_projector: outcome must be +1 or -1");
  }
  return 0.5 * (Operator2::Identity() + double(outcome) * sigma_theta(theta));
}

JointDistribution born_joint_obs(const TensorState& state, const Operator2& obs_a,
                                 const Operator2& obs_b) {
  JointDistribution d{};
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      Operator2 pa = 0.5 * (Operator2::Identity() + (ia == 0 ? 1.0 : -1.0) * obs_a);
      Operator2 pb = 0.5 * (Operator2::Identity() + (ib == 0 ? 1.0 : -1.0) * obs_b);
      d.p[ia][ib] = state.dot(kron(pa, pb) * state).real();
    }
  }
  return d;
}

JointDistribution born_joint(const TensorState& state, double alpha, double beta) {
  return born_joint_obs(state, sigma_theta(alpha), sigma_theta(beta));
}

double oracle_correlation(const TensorState& state, double alpha, double beta) {
  return state.dot(kron(sigma_theta(alpha), sigma_theta(beta)) * state).real();
}

TensorState textbook_collapse(const TensorState& state, Side side, double theta,
                              int outcome) {
  Operator2 proj = polarizer_projector(theta, outcome);
  Operator4 op = side == Side::A ? kron(proj, Operator2::Identity())
                                 : kron(Operator2::Identity(), proj);
  TensorState conditioned = op * state;
  double prob = conditioned.squaredNorm();
  if (prob <= 1e-12) {
    throw std::domain_error("textbook_collapse: outcome has zero probability");
  }
  return conditioned / std::sqrt(prob);
}

}  // namespace ctxphase::oracle
