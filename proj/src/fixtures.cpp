#include "ctxphase/fixtures.hpp"

#include "ctxphase/contextual.hpp"
#include "ctxphase/freevec.hpp"
#include "ctxphase/hilbert.hpp"

#include <cmath>

namespace ctxphase::fixtures {

namespace {

using contextual::LocalPair;
using contextual::Representative;

nlohmann::json ket_entry(const Ket& psi, Complex stripped, Frame frame) {
  return {{"frame", to_string(frame)},
          {"index", frame_eigenvalue(psi, frame) == 1 ? 0 : 1},
          {"stripped_phase", {stripped.real(), stripped.imag()}}};
}

nlohmann::json rep_entry(const Representative& rep, const LocalPair& lp) {
  double overlap = std::abs(freevec::quotient_map(rep.sum).dot(bell(rep.kind)));
  return {{"kind", to_string(rep.kind)},
          {"klass", to_string(rep.klass)},
          {"presentation_frame", to_string(rep.presentation_frame)},
          {"sum_text", freevec::to_text(rep.sum)},
          {"sum", freevec::to_json(rep.sum)},
          {"local_phases", {rep.phi_a, rep.phi_b}},
          {"quotient_overlap", overlap},
          {"collapsed",
           {{"measurement_frame", to_string(lp.outcome_frame)},
            {"psi_a", ket_entry(lp.psi_a, lp.stripped_a, lp.outcome_frame)},
            {"psi_b", ket_entry(lp.psi_b, lp.stripped_b, lp.outcome_frame)},
            {"outcomes",
             {frame_eigenvalue(lp.psi_a, lp.outcome_frame),
              frame_eigenvalue(lp.psi_b, lp.outcome_frame)}}}}};
}

}  // namespace

nlohmann::json lift_fixtures() {
  nlohmann::json table = nlohmann::json::array();
  for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                        BellKind::PsiMinus}) {
    for (ContextClass klass : {ContextClass::Class1, ContextClass::Class2}) {
      for (Frame frame : {Frame::Z, Frame::X}) {
        Representative rep = contextual::lift(kind, klass, frame);
        LocalPair lp =
            contextual::local_states(kind, klass, contextual::conjugate_frame(frame));
        table.push_back(rep_entry(rep, lp));
      }
    }
  }
  nlohmann::json y_lifts = nlohmann::json::array();
  for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                        BellKind::PsiMinus}) {
    for (ContextClass klass : {ContextClass::Class1, ContextClass::Class2}) {
      Representative rep = contextual::lift_y(kind, klass);
      LocalPair lp = contextual::y_local_states(kind, klass);
      y_lifts.push_back(rep_entry(rep, lp));
    }
  }
  return {{"lift_table", table}, {"y_lifts", y_lifts}};
}

std::string lift_fixtures_text() { return lift_fixtures().dump(2) + "\n"; }

}  // namespace ctxphase::fixtures
