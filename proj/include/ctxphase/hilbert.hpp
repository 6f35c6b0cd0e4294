#pragma once

// Complex linear algebra for one qubit and a qubit pair: named basis frames,
// Bell states, the polarizer observable, and small helpers shared by every
// other module. Amplitudes are always stored in the computational (Z) basis;
// frames are views onto that storage.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace ctxphase {

using Complex = std::complex<double>;
using Ket = Eigen::Vector2cd;          // one subsystem, Z-basis amplitudes
using TensorState = Eigen::Vector4cd;  // composite, index (i,j) -> 2*i + j
using Operator2 = Eigen::Matrix2cd;
using Operator4 = Eigen::Matrix4cd;

enum class Frame { Z, X, Y };
enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class Side { A, B };
enum class ContextClass { Class1, Class2 };

// Tolerances: kTightTol for plain arithmetic identities, kPhaseTol for
// compositions and global-phase equality, kEigTol for eigenvector residuals.
inline constexpr double kTightTol = 1e-12;
inline constexpr double kPhaseTol = 1e-9;
inline constexpr double kEigTol = 1e-10;

const char* to_string(Frame f);
const char* to_string(BellKind k);
const char* to_string(Side s);
const char* to_string(ContextClass c);

// index-th basis ket of `frame`, scaled by a unit-modulus phase.
// Throws std::domain_error if |phase| != 1 (within kTightTol) or index is not 0/1.
Ket frame_ket(Frame frame, int index, Complex phase = Complex{1.0, 0.0});

TensorState bell(BellKind kind);

// Polarizer observable 2P(theta) - I = [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
Operator2 sigma_theta(double theta);

// Exact Pauli matrix for a frame's observable (Z -> sigma_z, X -> sigma_x,
// Y -> sigma_y).
Operator2 pauli(Frame axis);

// Polarizer angle of a frame-aligned setting: Z -> 0, X -> pi/4.
// The Y observable is not in the sigma_theta family; throws std::domain_error.
double frame_angle(Frame frame);

TensorState tensor(const Ket& a, const Ket& b);
Operator4 kron(const Operator2& a, const Operator2& b);

// |<a|b>| >= 1 - tol for normalized inputs.
template <typename DerivedA, typename DerivedB>
bool equal_up_to_global_phase(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b,
                              double tol = kPhaseTol) {
  return std::abs(a.dot(b)) >= 1.0 - tol;
}

// Multiplies out the phase that makes the first non-negligible entry real and
// non-negative; returns the stripped phase (unit modulus).
template <typename Derived>
Complex canonicalize_leading(Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kTightTol) {
      Complex phase = v[i] / std::abs(v[i]);
      v /= phase;
      return phase;
    }
  }
  return Complex{1.0, 0.0};
}

// Coefficients c_ij with state = sum c_ij |i_frame> (x) |j_frame>, ordered
// (0,0),(0,1),(1,0),(1,1). The coefficient vector is phase-canonicalized
// (first non-negligible entry real positive), so reconstruction returns the
// state up to a global phase.
std::array<Complex, 4> expand_in_frame(const TensorState& state, Frame frame);

// Inverse of expand_in_frame: sum of c_ij |i_frame> (x) |j_frame>.
TensorState assemble_in_frame(const std::array<Complex, 4>& coeffs, Frame frame);

// Eigenvalue lambda with (opA (x) opB)|state> = lambda|state> within tol,
// empty if the state is not a joint eigenvector. Callers must pass Hermitian
// operators and a normalized state.
std::optional<double> is_joint_eigenvector(const TensorState& state,
                                           const Operator2& op_a,
                                           const Operator2& op_b,
                                           double tol = kEigTol);

// |det M| = 1/2 witness, M the 2x2 amplitude matrix of the state.
bool is_maximally_entangled(const TensorState& state, double tol = kPhaseTol);

// +1 when psi is the index-0 basis ket of `frame` up to a global phase,
// -1 for index 1. Throws std::domain_error when psi lies in neither ray.
int frame_eigenvalue(const Ket& psi, Frame frame, double tol = kPhaseTol);

}  // namespace ctxphase
