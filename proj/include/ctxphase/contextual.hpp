#pragma once

// Class-1/class-2 representatives of entangled states in the free vector
// space, projection onto each subsystem, and collapse to the definite local
// kets that serve as measurement outcomes.

#include "ctxphase/freevec.hpp"
#include "ctxphase/hilbert.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ctxphase::contextual {

// A coset member of an entangled state. `sum` carries all scalars absorbed
// into symbol phases; (phi_a, phi_b) are the local phases of the
// superposition-carrying term, recorded so that the second term reads
// (e^{-i phi_a} w_A, e^{i phi_b} w_B). With that convention the local-phase
// constraint e^{-i phi_a} e^{i phi_b} = e^{i phi} is exactly the condition
// that the quotient image reproduces the state.
struct Representative {
  BellKind kind;
  ContextClass klass;
  Frame presentation_frame;
  freevec::PairSum sum;
  double phi_a = 0.0;
  double phi_b = 0.0;
};

// Definite local kets for one measurement context. psi_a/psi_b are
// canonicalized (leading amplitude real non-negative); the stripped global
// phases are kept alongside so signed spellings like -|1'> stay recoverable.
struct LocalPair {
  Ket psi_a;
  Ket psi_b;
  Frame outcome_frame;
  Complex stripped_a{1.0, 0.0};
  Complex stripped_b{1.0, 0.0};
};

// The state's two-product-term expansion in a presentation frame:
// state ~ (v_A (x) v_B + e^{i phi} w_A (x) w_B) / sqrt(2), all kets unphased
// frame basis kets.
struct Presentation {
  Frame frame;
  int va, vb;  // basis indices of the first product term
  int wa, wb;  // basis indices of the second product term
  Complex superposition_phase;  // e^{i phi}
};

Presentation decompose(BellKind kind, Frame frame);

// Z serves X measurements and vice versa. Throws std::domain_error for Y.
Frame conjugate_frame(Frame frame);

// Fixed-table coset member for (kind, class) written in the given
// presentation frame (Z or X).
Representative lift(BellKind kind, ContextClass klass, Frame presentation_frame);

// Y-measurement representative found by a constrained search over local
// phases in multiples of pi/2 on the Z presentation: the quotient identity
// must hold and both collapsed kets must land in the Y frame. The two
// solutions, in (phi_a, phi_b) scan order, are Class1 and Class2.
Representative lift_y(BellKind kind, ContextClass klass);

// All instantiations of the eight phase-placement patterns for a two-term
// presentation, with phases drawn from `phase_grid` (default {0, pi}), that
// reproduce the state and collapse to definite conjugate-frame outcomes.
// Structural duplicates are returned once; each item is tagged by which class
// its collapsed outcomes realize. Throws std::domain_error on an empty grid.
std::vector<Representative> enumerate_representatives(BellKind kind,
                                                      Frame presentation_frame,
                                                      std::span<const double> phase_grid);
std::vector<Representative> enumerate_representatives(BellKind kind,
                                                      Frame presentation_frame);

// Linear extension of (u, v) -> u (side A) or -> v (side B); preserves
// coefficients and term order.
freevec::SubSum project(const freevec::PairSum& sum, Side side);
freevec::SubSum project(const Representative& rep, Side side);

// identify_T: the projected local superposition simplifies to a single ket.
// Raises DegenerateSumError on destructive interference.
Ket collapse(const freevec::SubSum& local);

// Lifts in the conjugate presentation frame, projects both sides, collapses
// both. measurement_frame must be Z or X.
LocalPair local_states(BellKind kind, ContextClass klass, Frame measurement_frame);

// Collapsed pair of the searched Y representative.
LocalPair y_local_states(BellKind kind, ContextClass klass);

// There is no presentation giving definite joint outcomes in two different
// frames; the witness is that the state is not a joint eigenvector of the
// two frame observables. Returned (not thrown): the no-go is the result.
struct MixedBasisNoGo {
  BellKind kind;
  Frame frame_a;
  Frame frame_b;
  std::optional<double> witness_eigenvalue;  // empty: not a joint eigenvector
};

MixedBasisNoGo mixed_lift(BellKind kind, Frame frame_a, Frame frame_b);

// Outcomes of n device readings on subsystem A alone (B destroyed), with the
// pair configured as (kind, klass) in `configured_frame`. A matching device
// frame reads the definite eigenvalue every time; a mismatched one draws
// i.i.d. +/-1 with Born weights, reproducibly from the seed.
std::vector<int> isolated_sequence(BellKind kind, ContextClass klass,
                                   Frame configured_frame, Frame device_frame,
                                   int n, std::uint64_t seed);

}  // namespace ctxphase::contextual
