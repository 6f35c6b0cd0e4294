// Acceptance suite: one line per criterion, nonzero exit if any fail.

#include "ctxphase/contextual.hpp"
#include "ctxphase/errors.hpp"
#include "ctxphase/freevec.hpp"
#include "ctxphase/measurement.hpp"
#include "ctxphase/oracle.hpp"
#include "ctxphase/stations.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace ctxphase;

namespace {

const BellKind kAllKinds[] = {BellKind::PhiPlus, BellKind::PhiMinus,
                              BellKind::PsiPlus, BellKind::PsiMinus};

constexpr std::uint64_t kEnsembleSeed = 20260810;
constexpr std::uint64_t kStationsSeed = 424242;

int failures = 0;

void criterion(int number, const std::string& label, std::function<bool(std::string&)> body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  std::printf("[%s] %2d. %s%s%s [%.1f ms]\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), detail.empty() ? "" : " -- ", detail.c_str(), ms);
  if (!ok) ++failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main() {
  criterion(1, "lift table: all 16 class representatives reproduce their state",
            [](std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    double worst = 1.0;
    int count = 0;
    for (BellKind kind : kAllKinds) {
      for (ContextClass klass : {ContextClass::Class1, ContextClass::Class2}) {
        for (Frame frame : {Frame::Z, Frame::X}) {
          auto rep = contextual::lift(kind, klass, frame);
          double overlap =
              std::abs(freevec::quotient_map(rep.sum).dot(bell(kind)));
          worst = std::min(worst, overlap);
          ++count;
        }
      }
    }
    double secs = elapsed_s(start);
    detail = "16/16 lifts, min overlap " + std::to_string(worst);
    return count == 16 && worst >= 1.0 - 1e-9 && secs < 1.0;
  });

  criterion(2, "worked example: symmetric pair collapses to opposite Z kets per class",
            [](std::string& detail) {
    bool ok = true;
    auto c1 = contextual::lift(BellKind::PsiPlus, ContextClass::Class1, Frame::X);
    ok &= freevec::to_text(c1.sum) == "(|0'>,|0'>) + (|1'>,|-1'>)";
    ok &= freevec::to_text(contextual::project(c1, Side::A)) == "|0'> + |1'>";
    ok &= freevec::to_text(contextual::project(c1, Side::B)) == "|0'> + |-1'>";
    auto lp1 = contextual::local_states(BellKind::PsiPlus, ContextClass::Class1,
                                        Frame::Z);
    ok &= (lp1.psi_a - frame_ket(Frame::Z, 0)).norm() <= 1e-12;
    ok &= (lp1.psi_b - frame_ket(Frame::Z, 1)).norm() <= 1e-12;
    auto lp2 = contextual::local_states(BellKind::PsiPlus, ContextClass::Class2,
                                        Frame::Z);
    ok &= (lp2.psi_a - frame_ket(Frame::Z, 1)).norm() <= 1e-12;
    ok &= (lp2.psi_b - frame_ket(Frame::Z, 0)).norm() <= 1e-12;
    detail = "class1 -> (|0>,|1>), class2 -> (|1>,|0>)";
    return ok;
  });

  criterion(3, "correlated pair law: E = cos 2(a-b) on the 361x361 degree grid",
            [](std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    TensorState state = bell(BellKind::PhiPlus);
    for (int i = 0; i <= 360; ++i) {
      for (int j = 0; j <= 360; ++j) {
        double alpha = i * M_PI / 180.0;
        double beta = j * M_PI / 180.0;
        double expected = std::cos(2.0 * (alpha - beta));
        double analytic = measurement::correlation_expansion(
                              BellKind::PhiPlus, Frame::Z, alpha, beta)
                              .total;
        double contraction = oracle::oracle_correlation(state, alpha, beta);
        worst = std::max({worst, std::abs(analytic - expected),
                          std::abs(contraction - expected)});
      }
    }
    double secs = elapsed_s(start);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "max err %.2e, %.2f s", worst, secs);
    detail = buf;
    return worst < 1e-12 && secs < 5.0;
  });

  criterion(4, "four-term expansion equals the oracle contraction",
            [](std::string& detail) {
    std::mt19937_64 gen(1234);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double worst = 0.0, worst_split = 0.0;
    for (BellKind kind : kAllKinds) {
      for (Frame frame : {Frame::Z, Frame::X}) {
        for (int trial = 0; trial < 100; ++trial) {
          double alpha = angle(gen), beta = angle(gen);
          auto t = measurement::correlation_expansion(kind, frame, alpha, beta);
          double truth = oracle::oracle_correlation(bell(kind), alpha, beta);
          worst = std::max(worst, std::abs(t.total - truth));
          worst_split = std::max(
              worst_split, std::abs(t.diagonal + t.off_diagonal - t.total));
        }
      }
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "max err %.2e, split err %.2e", worst,
                  worst_split);
    detail = buf;
    return worst < 1e-12 && worst_split < 1e-12;
  });

  criterion(5, "CHSH reaches 2*sqrt(2); deterministic assignments stay within 2",
            [](std::string& detail) {
    double s = measurement::chsh(BellKind::PhiPlus, 0.0, M_PI / 4.0, M_PI / 8.0,
                                 3.0 * M_PI / 8.0);
    bool quantum_ok = std::abs(s - 2.0 * std::sqrt(2.0)) <= 1e-9;
    bool classical_ok = true;
    for (int mask = 0; mask < 16; ++mask) {
      int fa = (mask & 1) ? 1 : -1;
      int fa2 = (mask & 2) ? 1 : -1;
      int gb = (mask & 4) ? 1 : -1;
      int gb2 = (mask & 8) ? 1 : -1;
      classical_ok &= std::abs(fa * gb - fa * gb2 + fa2 * gb + fa2 * gb2) <= 2;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "S = %.12f", s);
    detail = buf;
    return quantum_ok && classical_ok;
  });

  criterion(6, "ensemble statistics at n = 1e5 with a fixed seed",
            [](std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    const std::int64_t n = 100000;
    auto anti = measurement::sample_ensemble(BellKind::PsiMinus, Frame::Z, n,
                                             kEnsembleSeed);
    auto corr = measurement::sample_ensemble(BellKind::PsiPlus, Frame::X, n,
                                             kEnsembleSeed);
    bool ok = true;
    for (const auto& r : anti.records) ok &= r.a * r.b == -1;
    for (const auto& r : corr.records) ok &= r.a * r.b == 1;
    for (const auto* res : {&anti, &corr}) {
      ok &= std::abs(res->class1_frequency - 0.5) <= 0.005;
      ok &= std::abs(res->marginal_a) <= 0.016;
      ok &= std::abs(res->marginal_b) <= 0.016;
    }
    double secs = elapsed_s(start);
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "class1 freq %.4f / %.4f, marginals %.4f / %.4f, %.2f s",
                  anti.class1_frequency, corr.class1_frequency, anti.marginal_a,
                  corr.marginal_a, secs);
    detail = buf;
    return ok && secs < 5.0;
  });

  criterion(7, "the two classes exhaust the frame-aligned outcome support at 1/2 each",
            [](std::string& detail) {
    bool ok = true;
    for (BellKind kind : kAllKinds) {
      for (Frame frame : {Frame::Z, Frame::X}) {
        double theta = frame_angle(frame);
        auto d = oracle::born_joint(bell(kind), theta, theta);
        auto o1 = measurement::joint_outcome(kind, ContextClass::Class1, frame);
        auto o2 = measurement::joint_outcome(kind, ContextClass::Class2, frame);
        ok &= std::abs(d.of(o1.first, o1.second) - 0.5) <= 1e-12;
        ok &= std::abs(d.of(o2.first, o2.second) - 0.5) <= 1e-12;
        ok &= (o1 != o2);
        for (int a : {1, -1}) {
          for (int b : {1, -1}) {
            bool in_support = (a == o1.first && b == o1.second) ||
                              (a == o2.first && b == o2.second);
            if (!in_support) ok &= std::abs(d.of(a, b)) <= 1e-12;
          }
        }
      }
    }
    detail = "8 kind/frame cells";
    return ok;
  });

  criterion(8, "mixed-frame presentations are refused with an empty eigenvector witness",
            [](std::string& detail) {
    bool ok = true;
    for (BellKind kind : kAllKinds) {
      auto nogo = contextual::mixed_lift(kind, Frame::Z, Frame::X);
      ok &= !nogo.witness_eigenvalue.has_value();
      auto rev = contextual::mixed_lift(kind, Frame::X, Frame::Z);
      ok &= !rev.witness_eigenvalue.has_value();
    }
    detail = "4 kinds, both frame orders";
    return ok;
  });

  criterion(9, "bilinearity generators vanish under the quotient map",
            [](std::string& detail) {
    const Complex scalars[] = {{1, 0}, {-1, 0}, {0, 1}, std::polar(1.0, M_PI / 3.0)};
    const freevec::SubSymbol symbols[] = {
        freevec::sub(Frame::Z, 0), freevec::sub(Frame::Z, 1),
        freevec::sub(Frame::X, 0), freevec::sub(Frame::X, 1)};
    int cases = 0, degenerate = 0;
    for (Complex r : scalars) {
      for (Complex s : scalars) {
        for (const auto& u : symbols) {
          for (const auto& v : symbols) {
            for (const auto& w : {freevec::sub(Frame::Z, 0), freevec::sub(Frame::X, 1)}) {
              for (auto kind : {freevec::RelationKind::LeftLinearity,
                                freevec::RelationKind::RightLinearity}) {
                ++cases;
                try {
                  freevec::quotient_map(
                      freevec::relation_generator(kind, r, s, u, v, w));
                } catch (const DegenerateSumError&) {
                  ++degenerate;
                }
              }
            }
          }
        }
      }
    }
    detail = std::to_string(degenerate) + "/" + std::to_string(cases) +
             " signaled degenerate";
    return cases == 1024 && degenerate == cases;
  });

  criterion(10, "stations harness: 1e4 pairs, exact matched correlations, no signaling",
            [](std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    stations::Policy random{stations::PolicyKind::RandomZX};
    stations::Policy fixed_z{stations::PolicyKind::FixedZ};
    stations::Policy fixed_x{stations::PolicyKind::FixedX};
    auto res = stations::run_experiment(BellKind::PsiPlus, 10000, random, random,
                                        kStationsSeed);
    bool ok = res.records.size() == 10000 && res.lost_pairs.empty() &&
              !res.route_between_stations;
    for (const auto& s : res.stats) {
      if (s.setting_a == s.setting_b) {
        auto eig = is_joint_eigenvector(bell(BellKind::PsiPlus),
                                        pauli(s.setting_a), pauli(s.setting_b));
        ok &= eig.has_value() && std::abs(s.correlation) == 1.0 &&
              std::abs(s.correlation - *eig) <= 1e-10;
      }
    }
    // byte-level no-signaling: A's stream is the same whatever B does
    auto with_z = stations::run_experiment(BellKind::PsiPlus, 2000, random, fixed_z,
                                           kStationsSeed);
    auto with_x = stations::run_experiment(BellKind::PsiPlus, 2000, random, fixed_x,
                                           kStationsSeed);
    ok &= with_z.raw_a == with_x.raw_a;
    double secs = elapsed_s(start);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%zu joined, %.2f s", res.records.size(), secs);
    detail = buf;
    return ok && secs < 10.0;
  });

  criterion(11, "closed-form fixture comparison report", [](std::string& detail) {
    auto report = measurement::closed_form_report();
    if (report.size() != 4) return false;
    bool ok = true;
    std::string rows;
    for (const auto& row : report) {
      ok &= !row.oracle_form.empty() && row.oracle_form != "none";
      rows += std::string(to_string(row.kind)) + ": difference-form " +
              (row.difference_form_matches ? "MATCH" : "mismatch") +
              ", listed-form " + (row.listed_form_matches ? "MATCH" : "mismatch") +
              ", oracle " + row.oracle_form + "; ";
      if (row.kind == BellKind::PhiPlus) ok &= row.difference_form_matches;
    }
    detail = rows;
    return ok;
  });

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
