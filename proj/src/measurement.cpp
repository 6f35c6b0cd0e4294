#include "ctxphase/measurement.hpp"

#include "ctxphase/oracle.hpp"
#include "ctxphase/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ctxphase::measurement {

Setting Setting::from_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("Setting: angle must be finite");
  }
  return Setting{theta, std::nullopt};
}

std::pair<int, int> joint_outcome(BellKind kind, ContextClass klass, Frame frame) {
  contextual::LocalPair lp = contextual::local_states(kind, klass, frame);
  return {frame_eigenvalue(lp.psi_a, frame), frame_eigenvalue(lp.psi_b, frame)};
}

EnsembleResult sample_ensemble(BellKind kind, Frame frame, std::int64_t n,
                               std::uint64_t seed) {
  if (n < 1) {
    throw std::domain_error("sample_ensemble: n must be at least 1");
  }
  auto o1 = joint_outcome(kind, ContextClass::Class1, frame);
  auto o2 = joint_outcome(kind, ContextClass::Class2, frame);
  Setting setting = Setting::from_frame(frame);

  EnsembleResult res;
  res.records.reserve(static_cast<std::size_t>(n));
  std::int64_t class1 = 0, sum_ab = 0, sum_a = 0, sum_b = 0;
  for (std::int64_t pair = 0; pair < n; ++pair) {
    bool is1 = rng::coin(seed, rng::kStreamClassDraw, static_cast<std::uint64_t>(pair));
    ContextClass klass = is1 ? ContextClass::Class1 : ContextClass::Class2;
    auto [a, b] = is1 ? o1 : o2;
    res.records.push_back(OutcomeRecord{pair, klass, setting, setting, a, b});
    res.counts[a == 1 ? 0 : 1][b == 1 ? 0 : 1] += 1;
    class1 += is1 ? 1 : 0;
    sum_ab += a * b;
    sum_a += a;
    sum_b += b;
  }
  double mean = static_cast<double>(sum_ab) / static_cast<double>(n);
  double var = 1.0 - mean * mean;  // a*b is +/-1-valued
  res.estimate = CorrelationEstimate{mean, EstimateMethod::MonteCarlo, n, seed,
                                     std::sqrt(std::max(0.0, var) / double(n))};
  res.class1_frequency = static_cast<double>(class1) / static_cast<double>(n);
  res.marginal_a = static_cast<double>(sum_a) / static_cast<double>(n);
  res.marginal_b = static_cast<double>(sum_b) / static_cast<double>(n);
  return res;
}

namespace {

struct Quadruple {
  Ket u, v, x, y;  // state ~ (u (x) v + x (x) y) / sqrt(2)
};

Quadruple decomposition_kets(BellKind kind, Frame frame, DecompositionSource source) {
  if (source == DecompositionSource::Canonical) {
    contextual::Presentation d = contextual::decompose(kind, frame);
    return Quadruple{frame_ket(frame, d.va), frame_ket(frame, d.vb),
                     frame_ket(frame, d.wa),
                     frame_ket(frame, d.wb, d.superposition_phase)};
  }
  ContextClass klass = source == DecompositionSource::LiftClass1
                           ? ContextClass::Class1
                           : ContextClass::Class2;
  contextual::Representative rep = contextual::lift(kind, klass, frame);
  return Quadruple{freevec::symbol_ket(rep.sum[0].sym.a),
                   freevec::symbol_ket(rep.sum[0].sym.b),
                   freevec::symbol_ket(rep.sum[1].sym.a),
                   freevec::symbol_ket(rep.sum[1].sym.b)};
}

Complex sandwich(const Ket& bra, const Operator2& op, const Ket& ket) {
  return bra.dot(op * ket);
}

}  // namespace

CorrelationTerms correlation_expansion(BellKind kind, Frame presentation_frame,
                                       double alpha, double beta,
                                       DecompositionSource source) {
  Quadruple q = decomposition_kets(kind, presentation_frame, source);
  Operator2 sa = sigma_theta(alpha);
  Operator2 sb = sigma_theta(beta);
  Complex diag = 0.5 * sandwich(q.u, sa, q.u) * sandwich(q.v, sb, q.v) +
                 0.5 * sandwich(q.x, sa, q.x) * sandwich(q.y, sb, q.y);
  Complex off = 0.5 * sandwich(q.u, sa, q.x) * sandwich(q.v, sb, q.y) +
                0.5 * sandwich(q.x, sa, q.u) * sandwich(q.y, sb, q.v);
  CorrelationTerms terms;
  terms.diagonal = diag.real();
  terms.off_diagonal = off.real();
  terms.total = terms.diagonal + terms.off_diagonal;
  terms.estimate = CorrelationEstimate{terms.total, EstimateMethod::AnalyticExpansion,
                                       std::nullopt, std::nullopt, std::nullopt};
  return terms;
}

ChshBreakdown chsh_detail(BellKind kind, double a, double a2, double b, double b2) {
  TensorState state = bell(kind);
  ChshBreakdown r{};
  r.e_ab = oracle::oracle_correlation(state, a, b);
  r.e_ab2 = oracle::oracle_correlation(state, a, b2);
  r.e_a2b = oracle::oracle_correlation(state, a2, b);
  r.e_a2b2 = oracle::oracle_correlation(state, a2, b2);
  r.s = r.e_ab - r.e_ab2 + r.e_a2b + r.e_a2b2;
  return r;
}

double chsh(BellKind kind, double a, double a2, double b, double b2) {
  return chsh_detail(kind, a, a2, b, b2).s;
}

double difference_form(double alpha, double beta) {
  return std::cos(2.0 * (alpha - beta));
}

double listed_form(BellKind kind, double alpha, double beta) {
  switch (kind) {
    case BellKind::PsiPlus: return std::cos(2.0 * (alpha - beta));
    case BellKind::PsiMinus: return std::cos(2.0 * (alpha + beta));
    case BellKind::PhiPlus: return -std::cos(2.0 * (alpha + beta));
    case BellKind::PhiMinus: return -std::cos(2.0 * (alpha - beta));
  }
  throw std::logic_error("listed_form: unreachable");
}

std::vector<ClosedFormComparison> closed_form_report(int grid_steps) {
  struct Candidate {
    const char* label;
    double (*f)(double, double);
  };
  static const Candidate candidates[] = {
      {"cos2(a-b)", [](double a, double b) { return std::cos(2.0 * (a - b)); }},
      {"cos2(a+b)", [](double a, double b) { return std::cos(2.0 * (a + b)); }},
      {"-cos2(a-b)", [](double a, double b) { return -std::cos(2.0 * (a - b)); }},
      {"-cos2(a+b)", [](double a, double b) { return -std::cos(2.0 * (a + b)); }},
  };
  std::vector<ClosedFormComparison> report;
  for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                        BellKind::PsiMinus}) {
    TensorState state = bell(kind);
    double err_diff = 0.0, err_listed = 0.0;
    double err_candidate[4] = {0, 0, 0, 0};
    for (int i = 0; i <= grid_steps; ++i) {
      for (int j = 0; j <= grid_steps; ++j) {
        double alpha = M_PI * i / grid_steps;
        double beta = M_PI * j / grid_steps;
        double truth = oracle::oracle_correlation(state, alpha, beta);
        err_diff = std::max(err_diff, std::abs(truth - difference_form(alpha, beta)));
        err_listed =
            std::max(err_listed, std::abs(truth - listed_form(kind, alpha, beta)));
        for (int c = 0; c < 4; ++c) {
          err_candidate[c] =
              std::max(err_candidate[c], std::abs(truth - candidates[c].f(alpha, beta)));
        }
      }
    }
    std::string oracle_form = "none";
    for (int c = 0; c < 4; ++c) {
      if (err_candidate[c] < 1e-12) {
        oracle_form = candidates[c].label;
        break;
      }
    }
    report.push_back(ClosedFormComparison{kind, err_diff, err_listed,
                                          err_diff < 1e-12, err_listed < 1e-12,
                                          oracle_form});
  }
  return report;
}

}  // namespace ctxphase::measurement
