#include "ctxphase/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace ctxphase {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
const Complex kI{0.0, 1.0};
}  // namespace

const char* to_string(Frame f) {
  switch (f) {
    case Frame::Z: return "Z";
    case Frame::X: return "X";
    case Frame::Y: return "Y";
  }
  return "?";
}

const char* to_string(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus: return "PHI_PLUS";
    case BellKind::PhiMinus: return "PHI_MINUS";
    case BellKind::PsiPlus: return "PSI_PLUS";
    case BellKind::PsiMinus: return "PSI_MINUS";
  }
  return "?";
}

const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }

const char* to_string(ContextClass c) {
  return c == ContextClass::Class1 ? "CLASS1" : "CLASS2";
}

Ket frame_ket(Frame frame, int index, Complex phase) {
  if (index != 0 && index != 1) {
    throw std::domain_error("frame_ket: index must be 0 or 1");
  }
  if (!std::isfinite(phase.real()) || !std::isfinite(phase.imag()) ||
      std::abs(std::abs(phase) - 1.0) > kTightTol) {
    throw std::domain_error("frame_ket: phase must have unit modulus");
  }
  Ket k;
  switch (frame) {
    case Frame::Z:
      k = index == 0 ? Ket(1.0, 0.0) : Ket(0.0, 1.0);
      break;
    case Frame::X:
      k = index == 0 ? Ket(kInvSqrt2, kInvSqrt2) : Ket(kInvSqrt2, -kInvSqrt2);
      break;
    case Frame::Y:
      k = index == 0 ? Ket(kInvSqrt2, kI * kInvSqrt2)
                     : Ket(kInvSqrt2, -kI * kInvSqrt2);
      break;
  }
  return phase * k;
}

TensorState bell(BellKind kind) {
  TensorState s = TensorState::Zero();
  switch (kind) {
    case BellKind::PhiPlus:
      s[0] = kInvSqrt2;
      s[3] = kInvSqrt2;
      break;
    case BellKind::PhiMinus:
      s[0] = kInvSqrt2;
      s[3] = -kInvSqrt2;
      break;
    case BellKind::PsiPlus:
      s[1] = kInvSqrt2;
      s[2] = kInvSqrt2;
      break;
    case BellKind::PsiMinus:
      s[1] = kInvSqrt2;
      s[2] = -kInvSqrt2;
      break;
  }
  return s;
}

Operator2 sigma_theta(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("sigma_theta: angle must be finite");
  }
  double c = std::cos(2.0 * theta);
  double s = std::sin(2.0 * theta);
  Operator2 m;
  m << c, s, s, -c;
  return m;
}

Operator2 pauli(Frame axis) {
  Operator2 m;
  switch (axis) {
    case Frame::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
    case Frame::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Frame::Y:
      m << 0.0, -kI, kI, 0.0;
      break;
  }
  return m;
}

double frame_angle(Frame frame) {
  switch (frame) {
    case Frame::Z: return 0.0;
    case Frame::X: return M_PI / 4.0;
    case Frame::Y: break;
  }
  throw std::domain_error("frame_angle: Y has no polarizer-angle equivalent");
}

TensorState tensor(const Ket& a, const Ket& b) {
  TensorState s;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      s[2 * i + j] = a[i] * b[j];
    }
  }
  return s;
}

Operator4 kron(const Operator2& a, const Operator2& b) {
  Operator4 m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          m(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
        }
      }
    }
  }
  return m;
}

std::array<Complex, 4> expand_in_frame(const TensorState& state, Frame frame) {
  std::array<Complex, 4> coeffs;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      coeffs[2 * i + j] = tensor(frame_ket(frame, i), frame_ket(frame, j)).dot(state);
    }
  }
  Eigen::Map<TensorState> view(coeffs.data());
  canonicalize_leading(view);
  return coeffs;
}

TensorState assemble_in_frame(const std::array<Complex, 4>& coeffs, Frame frame) {
  TensorState s = TensorState::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      s += coeffs[2 * i + j] * tensor(frame_ket(frame, i), frame_ket(frame, j));
    }
  }
  return s;
}

std::optional<double> is_joint_eigenvector(const TensorState& state,
                                           const Operator2& op_a,
                                           const Operator2& op_b, double tol) {
  TensorState w = kron(op_a, op_b) * state;
  Complex lambda = state.dot(w);
  if ((w - lambda * state).norm() > tol) {
    return std::nullopt;
  }
  return lambda.real();
}

bool is_maximally_entangled(const TensorState& state, double tol) {
  Eigen::Matrix2cd m;
  m << state[0], state[1], state[2], state[3];
  return std::abs(std::abs(m.determinant()) - 0.5) <= tol;
}

int frame_eigenvalue(const Ket& psi, Frame frame, double tol) {
  if (equal_up_to_global_phase(psi, frame_ket(frame, 0), tol)) return 1;
  if (equal_up_to_global_phase(psi, frame_ket(frame, 1), tol)) return -1;
  throw std::domain_error(std::string("frame_eigenvalue: ket is not a ") +
                          to_string(frame) + " basis ket");
}

}  // namespace ctxphase
