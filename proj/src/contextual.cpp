#include "ctxphase/contextual.hpp"

#include "ctxphase/errors.hpp"
#include "ctxphase/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ctxphase::contextual {

using freevec::PairSum;
using freevec::PairSymbol;
using freevec::PairTerm;
using freevec::SubSum;
using freevec::SubSymbol;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double norm_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a + 0.0;  // flushes -0.0
}

// Exact unit phase when the angle sits on a quarter turn, else polar form.
Complex unit_phase(double angle) {
  static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  double q = norm_angle(angle) / (M_PI / 2.0);
  double nearest = std::round(q);
  if (std::abs(q - nearest) < 1e-12) {
    return quarter[static_cast<int>(nearest) % 4];
  }
  return std::polar(1.0, angle);
}

struct TableEntry {
  int i1, s1a, j1, s1b;  // first term: (s1a|i1>, s1b|j1>)
  int i2, s2a, j2, s2b;  // second term
};

// The frozen class table. Rows are (kind, class); columns Z then X.
TableEntry table_entry(BellKind kind, ContextClass klass, Frame frame) {
  const bool c1 = klass == ContextClass::Class1;
  if (frame == Frame::Z) {
    switch (kind) {
      case BellKind::PsiMinus:
        return c1 ? TableEntry{0, +1, 1, +1, 1, +1, 0, -1}
                  : TableEntry{0, +1, 1, +1, 1, -1, 0, +1};
      case BellKind::PhiMinus:
        return c1 ? TableEntry{0, +1, 0, +1, 1, -1, 1, +1}
                  : TableEntry{0, +1, 0, +1, 1, +1, 1, -1};
      case BellKind::PhiPlus:
        return c1 ? TableEntry{0, +1, 0, +1, 1, +1, 1, +1}
                  : TableEntry{0, +1, 0, +1, 1, -1, 1, -1};
      case BellKind::PsiPlus:
        return c1 ? TableEntry{0, +1, 1, +1, 1, +1, 0, +1}
                  : TableEntry{0, +1, 1, +1, 1, -1, 0, -1};
    }
  } else {
    switch (kind) {
      case BellKind::PsiMinus:
        return c1 ? TableEntry{1, +1, 0, +1, 0, +1, 1, -1}
                  : TableEntry{1, +1, 0, +1, 0, -1, 1, +1};
      case BellKind::PhiMinus:
        return c1 ? TableEntry{1, +1, 0, +1, 0, +1, 1, +1}
                  : TableEntry{1, +1, 0, +1, 0, -1, 1, -1};
      case BellKind::PhiPlus:
        return c1 ? TableEntry{0, +1, 0, +1, 1, +1, 1, +1}
                  : TableEntry{0, +1, 0, +1, 1, -1, 1, -1};
      case BellKind::PsiPlus:
        return c1 ? TableEntry{0, +1, 0, +1, 1, +1, 1, -1}
                  : TableEntry{0, +1, 0, +1, 1, -1, 1, +1};
    }
  }
  throw std::logic_error("table_entry: unreachable");
}

PairSum sum_from_phases(Frame frame, const Presentation& d, Complex chi_a,
                        Complex chi_b, Complex eta_a, Complex eta_b) {
  PairSum sum;
  sum.push_back(PairTerm{Complex{1, 0},
                         PairSymbol{SubSymbol{frame, d.va, chi_a},
                                    SubSymbol{frame, d.vb, chi_b}}});
  sum.push_back(PairTerm{Complex{1, 0},
                         PairSymbol{SubSymbol{frame, d.wa, eta_a},
                                    SubSymbol{frame, d.wb, eta_b}}});
  return sum;
}

// Local phases of the superposition-carrying term relative to the first
// term, in the (e^{-i phi_a} w_A, e^{i phi_b} w_B) convention.
void record_phases(const PairSum& sum, double* phi_a, double* phi_b) {
  Complex rel_a = sum[1].sym.a.phase / sum[0].sym.a.phase;
  Complex rel_b = sum[1].sym.b.phase / sum[0].sym.b.phase;
  *phi_a = norm_angle(-std::arg(rel_a));
  *phi_b = norm_angle(std::arg(rel_b));
}

}  // namespace

Presentation decompose(BellKind kind, Frame frame) {
  auto coeffs = expand_in_frame(bell(kind), frame);
  std::vector<int> nonzero;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(coeffs[k]) > kPhaseTol) nonzero.push_back(k);
  }
  if (nonzero.size() != 2) {
    throw std::logic_error("decompose: expected a two-term expansion");
  }
  int k1 = nonzero[0], k2 = nonzero[1];
  return Presentation{frame, k1 / 2, k1 % 2, k2 / 2, k2 % 2,
                      coeffs[k2] / coeffs[k1]};
}

Frame conjugate_frame(Frame frame) {
  switch (frame) {
    case Frame::Z: return Frame::X;
    case Frame::X: return Frame::Z;
    case Frame::Y: break;
  }
  throw std::domain_error("conjugate_frame: only Z and X pair up");
}

Representative lift(BellKind kind, ContextClass klass, Frame presentation_frame) {
  if (presentation_frame == Frame::Y) {
    throw std::domain_error("lift: presentations are tabulated for Z and X; use lift_y");
  }
  TableEntry e = table_entry(kind, klass, presentation_frame);
  PairSum sum;
  sum.push_back(PairTerm{
      Complex{1, 0},
      PairSymbol{SubSymbol{presentation_frame, e.i1, Complex{double(e.s1a), 0}},
                 SubSymbol{presentation_frame, e.j1, Complex{double(e.s1b), 0}}}});
  sum.push_back(PairTerm{
      Complex{1, 0},
      PairSymbol{SubSymbol{presentation_frame, e.i2, Complex{double(e.s2a), 0}},
                 SubSymbol{presentation_frame, e.j2, Complex{double(e.s2b), 0}}}});
  Representative rep{kind, klass, presentation_frame, std::move(sum), 0, 0};
  record_phases(rep.sum, &rep.phi_a, &rep.phi_b);
  return rep;
}

Representative lift_y(BellKind kind, ContextClass klass) {
  Presentation d = decompose(kind, Frame::Z);
  static const Complex exact[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Representative> found;
  for (int ka = 0; ka < 4 && found.size() < 2; ++ka) {
    for (int kb = 0; kb < 4 && found.size() < 2; ++kb) {
      Complex ea = std::conj(exact[ka]);  // e^{-i phi_a}
      Complex eb = exact[kb];             // e^{+i phi_b}
      if (std::abs(ea * eb - d.superposition_phase) > kPhaseTol) continue;
      PairSum sum = sum_from_phases(Frame::Z, d, {1, 0}, {1, 0}, ea, eb);
      Ket pa = collapse(project(sum, Side::A));
      Ket pb = collapse(project(sum, Side::B));
      bool a_in_y = equal_up_to_global_phase(pa, frame_ket(Frame::Y, 0)) ||
                    equal_up_to_global_phase(pa, frame_ket(Frame::Y, 1));
      bool b_in_y = equal_up_to_global_phase(pb, frame_ket(Frame::Y, 0)) ||
                    equal_up_to_global_phase(pb, frame_ket(Frame::Y, 1));
      if (!a_in_y || !b_in_y) continue;
      Representative rep{kind,
                         found.empty() ? ContextClass::Class1 : ContextClass::Class2,
                         Frame::Z, std::move(sum), ka * (M_PI / 2.0),
                         kb * (M_PI / 2.0)};
      found.push_back(std::move(rep));
    }
  }
  if (found.size() != 2) {
    throw std::logic_error("lift_y: phase search did not find the two classes");
  }
  return found[klass == ContextClass::Class1 ? 0 : 1];
}

std::vector<Representative> enumerate_representatives(BellKind kind,
                                                      Frame presentation_frame,
                                                      std::span<const double> phase_grid) {
  if (phase_grid.empty()) {
    throw std::domain_error("enumerate_representatives: phase grid must be nonempty");
  }
  if (presentation_frame == Frame::Y) {
    throw std::domain_error("enumerate_representatives: presentation frame must be Z or X");
  }
  Presentation d = decompose(kind, presentation_frame);
  Frame mframe = conjugate_frame(presentation_frame);
  LocalPair fixture1 = local_states(kind, ContextClass::Class1, mframe);
  LocalPair fixture2 = local_states(kind, ContextClass::Class2, mframe);

  // The eight placements of the superposition phase p1 = e^{i phi} and a free
  // local phase p2 = e^{i phi'} over the two product terms.
  auto instantiate = [&](int row, Complex p1, Complex p2) -> PairSum {
    Complex one{1, 0};
    switch (row) {
      case 0: return sum_from_phases(presentation_frame, d, one, one, one, p1);
      case 1: return sum_from_phases(presentation_frame, d, one, p2, one, one);
      case 2: return sum_from_phases(presentation_frame, d, std::conj(p2), p2, p1, one);
      case 3: return sum_from_phases(presentation_frame, d, p2, one, std::conj(p1), p1);
      case 4: return sum_from_phases(presentation_frame, d, one, one, p1, one);
      case 5: return sum_from_phases(presentation_frame, d, p2, one, one, one);
      case 6: return sum_from_phases(presentation_frame, d, std::conj(p2), p2, one, p1);
      case 7: return sum_from_phases(presentation_frame, d, one, p2, std::conj(p1), p1);
    }
    throw std::logic_error("enumerate_representatives: bad pattern row");
  };
  auto uses_p1 = [](int row) { return row != 1 && row != 5; };
  auto uses_p2 = [](int row) { return row >= 2 && row != 4; };

  std::vector<Representative> out;
  std::unordered_set<std::string> seen;
  TensorState target = bell(kind);
  auto consider = [&](const PairSum& sum) {
    TensorState image;
    try {
      image = freevec::quotient_map(sum);
    } catch (const DegenerateSumError&) {
      return;
    }
    if (!equal_up_to_global_phase(image, target)) return;
    Ket pa = collapse(project(sum, Side::A));
    Ket pb = collapse(project(sum, Side::B));
    ContextClass klass;
    if (equal_up_to_global_phase(pa, fixture1.psi_a) &&
        equal_up_to_global_phase(pb, fixture1.psi_b)) {
      klass = ContextClass::Class1;
    } else if (equal_up_to_global_phase(pa, fixture2.psi_a) &&
               equal_up_to_global_phase(pb, fixture2.psi_b)) {
      klass = ContextClass::Class2;
    } else {
      return;  // valid coset member, but not definite in the conjugate frame
    }
    std::string key = freevec::to_text(freevec::normal_form(sum));
    if (!seen.insert(key).second) return;
    Representative rep{kind, klass, presentation_frame, sum, 0, 0};
    record_phases(rep.sum, &rep.phi_a, &rep.phi_b);
    out.push_back(std::move(rep));
  };

  for (int row = 0; row < 8; ++row) {
    if (uses_p1(row) && uses_p2(row)) {
      for (double phi : phase_grid) {
        for (double phip : phase_grid) {
          consider(instantiate(row, unit_phase(phi), unit_phase(phip)));
        }
      }
    } else if (uses_p1(row)) {
      for (double phi : phase_grid) {
        consider(instantiate(row, unit_phase(phi), {1, 0}));
      }
    } else {
      for (double phip : phase_grid) {
        consider(instantiate(row, {1, 0}, unit_phase(phip)));
      }
    }
  }
  return out;
}

std::vector<Representative> enumerate_representatives(BellKind kind,
                                                      Frame presentation_frame) {
  static const double default_grid[] = {0.0, M_PI};
  return enumerate_representatives(kind, presentation_frame, default_grid);
}

SubSum project(const PairSum& sum, Side side) {
  SubSum out;
  out.reserve(sum.size());
  for (const auto& t : sum) {
    out.push_back(freevec::SubTerm{t.coeff, side == Side::A ? t.sym.a : t.sym.b});
  }
  return out;
}

SubSum project(const Representative& rep, Side side) { return project(rep.sum, side); }

Ket collapse(const SubSum& local) { return freevec::identify_T(local); }

LocalPair local_states(BellKind kind, ContextClass klass, Frame measurement_frame) {
  Representative rep = lift(kind, klass, conjugate_frame(measurement_frame));
  LocalPair lp;
  lp.psi_a = collapse(project(rep, Side::A));
  lp.psi_b = collapse(project(rep, Side::B));
  lp.outcome_frame = measurement_frame;
  lp.stripped_a = canonicalize_leading(lp.psi_a);
  lp.stripped_b = canonicalize_leading(lp.psi_b);
  return lp;
}

LocalPair y_local_states(BellKind kind, ContextClass klass) {
  Representative rep = lift_y(kind, klass);
  LocalPair lp;
  lp.psi_a = collapse(project(rep, Side::A));
  lp.psi_b = collapse(project(rep, Side::B));
  lp.outcome_frame = Frame::Y;
  lp.stripped_a = canonicalize_leading(lp.psi_a);
  lp.stripped_b = canonicalize_leading(lp.psi_b);
  return lp;
}

MixedBasisNoGo mixed_lift(BellKind kind, Frame frame_a, Frame frame_b) {
  if (frame_a == frame_b) {
    throw std::domain_error("mixed_lift: frames must differ");
  }
  return MixedBasisNoGo{kind, frame_a, frame_b,
                        is_joint_eigenvector(bell(kind), pauli(frame_a), pauli(frame_b))};
}

std::vector<int> isolated_sequence(BellKind kind, ContextClass klass,
                                   Frame configured_frame, Frame device_frame,
                                   int n, std::uint64_t seed) {
  if (n < 1) {
    throw std::domain_error("isolated_sequence: n must be at least 1");
  }
  Ket psi_a = local_states(kind, klass, configured_frame).psi_a;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  if (device_frame == configured_frame) {
    int eig = frame_eigenvalue(psi_a, configured_frame);
    out.assign(static_cast<std::size_t>(n), eig);
    return out;
  }
  double p_plus = std::norm(frame_ket(device_frame, 0).dot(psi_a));
  for (int k = 0; k < n; ++k) {
    double u = rng::uniform01(seed, rng::kStreamIsolated, static_cast<std::uint64_t>(k));
    out.push_back(u < p_plus ? 1 : -1);
  }
  return out;
}

}  // namespace ctxphase::contextual
