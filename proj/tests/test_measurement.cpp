#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctxphase/measurement.hpp"
#include "ctxphase/oracle.hpp"

#include <cmath>
#include <random>

using namespace ctxphase;
using namespace ctxphase::measurement;

namespace {

const BellKind kAllKinds[] = {BellKind::PhiPlus, BellKind::PhiMinus,
                              BellKind::PsiPlus, BellKind::PsiMinus};

constexpr std::uint64_t kSeed = 20260810;

}  // namespace

TEST_CASE("joint_outcome worked examples") {
  CHECK(joint_outcome(BellKind::PsiPlus, ContextClass::Class1, Frame::Z) ==
        std::pair{1, -1});
  CHECK(joint_outcome(BellKind::PsiPlus, ContextClass::Class1, Frame::X) ==
        std::pair{1, 1});
  auto o = joint_outcome(BellKind::PsiMinus, ContextClass::Class2, Frame::Z);
  CHECK(o == std::pair{-1, 1});
  // cross-check: the pair sits in the support of the aligned-distribution
  CHECK(oracle::born_joint(bell(BellKind::PsiMinus), 0.0, 0.0).of(o.first, o.second) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sample_ensemble reproduces deterministic correlations exactly") {
  EnsembleResult anti = sample_ensemble(BellKind::PsiMinus, Frame::Z, 2000, kSeed);
  for (const auto& r : anti.records) CHECK(r.a * r.b == -1);
  CHECK(anti.estimate.value == -1.0);

  EnsembleResult corr = sample_ensemble(BellKind::PsiPlus, Frame::X, 2000, kSeed);
  for (const auto& r : corr.records) CHECK(r.a * r.b == 1);
  CHECK(corr.estimate.value == 1.0);
}

TEST_CASE("sample_ensemble estimate equals the joint eigenvalue for every case") {
  for (BellKind kind : kAllKinds) {
    for (Frame frame : {Frame::Z, Frame::X}) {
      auto eig = is_joint_eigenvector(bell(kind), pauli(frame), pauli(frame));
      REQUIRE(eig.has_value());
      EnsembleResult res = sample_ensemble(kind, frame, 500, kSeed);
      CHECK(std::abs(res.estimate.value) == 1.0);  // deterministic mixture
      CHECK(std::abs(res.estimate.value - *eig) <= 1e-10);
    }
  }
}

TEST_CASE("sample_ensemble class draws are fair and marginals vanish") {
  const std::int64_t n = 100000;
  EnsembleResult res = sample_ensemble(BellKind::PsiPlus, Frame::Z, n, kSeed);
  CHECK(res.class1_frequency >= 0.495);
  CHECK(res.class1_frequency <= 0.505);
  double bound = 3.0 * std::sqrt(1.0 / (4.0 * double(n)));
  CHECK(std::abs(res.marginal_a) <= bound);
  CHECK(std::abs(res.marginal_b) <= bound);
  // records ordered by pair_id, outcomes +/-1 only
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    CHECK(res.records[i].pair_id == std::int64_t(i));
    CHECK(std::abs(res.records[i].a) == 1);
    CHECK(std::abs(res.records[i].b) == 1);
  }
  CHECK(res.estimate.seed == kSeed);
  CHECK(res.estimate.n == n);
}

TEST_CASE("marginal fairness holds for every kind and frame at the fixed seed") {
  const std::int64_t n = 20000;
  double bound = 3.0 * std::sqrt(1.0 / (4.0 * double(n)));
  for (BellKind kind : kAllKinds) {
    for (Frame frame : {Frame::Z, Frame::X}) {
      EnsembleResult res = sample_ensemble(kind, frame, n, kSeed);
      CHECK(std::abs(res.marginal_a) <= bound);
      CHECK(std::abs(res.marginal_b) <= bound);
    }
  }
}

TEST_CASE("correlation expansion: correlated pair state follows cos 2(a-b)") {
  for (int i = 0; i <= 36; ++i) {
    for (int j = 0; j <= 36; ++j) {
      double alpha = i * M_PI / 36.0;
      double beta = j * M_PI / 36.0;
      CorrelationTerms t =
          correlation_expansion(BellKind::PhiPlus, Frame::Z, alpha, beta);
      CHECK(std::abs(t.total - std::cos(2.0 * (alpha - beta))) <= 1e-12);
      CHECK(std::abs(t.diagonal + t.off_diagonal - t.total) <= 1e-12);
    }
  }
  CorrelationTerms aligned = correlation_expansion(BellKind::PhiPlus, Frame::Z, 0, 0);
  CHECK(aligned.total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(aligned.diagonal == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(aligned.off_diagonal) <= 1e-12);
}

TEST_CASE("correlation expansion equals the oracle contraction") {
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (BellKind kind : kAllKinds) {
    for (Frame frame : {Frame::Z, Frame::X}) {
      for (int trial = 0; trial < 100; ++trial) {
        double alpha = angle(gen), beta = angle(gen);
        CorrelationTerms t = correlation_expansion(kind, frame, alpha, beta);
        double truth = oracle::oracle_correlation(bell(kind), alpha, beta);
        CHECK(std::abs(t.total - truth) <= 1e-12);
      }
    }
  }
}

TEST_CASE("all three decomposition sources agree") {
  std::mt19937_64 gen(808);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (BellKind kind : kAllKinds) {
    for (Frame frame : {Frame::Z, Frame::X}) {
      for (int trial = 0; trial < 20; ++trial) {
        double alpha = angle(gen), beta = angle(gen);
        double canonical =
            correlation_expansion(kind, frame, alpha, beta,
                                  DecompositionSource::Canonical).total;
        double lifted1 =
            correlation_expansion(kind, frame, alpha, beta,
                                  DecompositionSource::LiftClass1).total;
        double lifted2 =
            correlation_expansion(kind, frame, alpha, beta,
                                  DecompositionSource::LiftClass2).total;
        CHECK(std::abs(canonical - lifted1) <= 1e-12);
        CHECK(std::abs(canonical - lifted2) <= 1e-12);
      }
    }
  }
}

TEST_CASE("chsh at the optimal angles reaches 2 sqrt(2)") {
  // E = cos 2(a-b) at the four settings: each term is sqrt(2)/2.
  double s = chsh(BellKind::PhiPlus, 0.0, M_PI / 4.0, M_PI / 8.0, 3.0 * M_PI / 8.0);
  CHECK(std::abs(s - 2.0 * std::sqrt(2.0)) <= 1e-9);

  ChshBreakdown d =
      chsh_detail(BellKind::PhiPlus, 0.0, M_PI / 4.0, M_PI / 8.0, 3.0 * M_PI / 8.0);
  CHECK(d.e_ab == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(d.e_ab2 == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));

  CHECK(chsh(BellKind::PhiPlus, 0.0, 0.0, 0.0, 0.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("deterministic local assignments stay within the classical bound") {
  for (int mask = 0; mask < 16; ++mask) {
    int fa = (mask & 1) ? 1 : -1;
    int fa2 = (mask & 2) ? 1 : -1;
    int gb = (mask & 4) ? 1 : -1;
    int gb2 = (mask & 8) ? 1 : -1;
    int s = fa * gb - fa * gb2 + fa2 * gb + fa2 * gb2;
    CHECK(std::abs(s) <= 2);
  }
}

TEST_CASE("chsh at frame-aligned angles respects the classical bound") {
  const double aligned[] = {0.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0};
  for (BellKind kind : kAllKinds) {
    for (double a : aligned) {
      for (double a2 : aligned) {
        for (double b : aligned) {
          for (double b2 : aligned) {
            CHECK(std::abs(chsh(kind, a, a2, b, b2)) <= 2.0 + 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("closed-form report: the difference form is the correlated pair's law") {
  auto report = closed_form_report();
  REQUIRE(report.size() == 4);
  for (const auto& row : report) {
    CHECK(row.oracle_form != "none");
    switch (row.kind) {
      // expected truths by direct contraction of sigma_a (x) sigma_b
      case BellKind::PhiPlus:
        CHECK(row.difference_form_matches);
        CHECK(row.oracle_form == "cos2(a-b)");
        break;
      case BellKind::PhiMinus:
        CHECK(row.oracle_form == "cos2(a+b)");
        break;
      case BellKind::PsiPlus:
        CHECK(row.oracle_form == "-cos2(a+b)");
        break;
      case BellKind::PsiMinus:
        CHECK(row.oracle_form == "-cos2(a-b)");
        break;
    }
    if (row.kind != BellKind::PhiPlus) {
      CHECK_FALSE(row.difference_form_matches);
      CHECK(row.difference_form_max_err > 0.5);
    }
    // the listed table pairs each state with its partner's law
    CHECK_FALSE(row.listed_form_matches);
    CHECK(row.listed_form_max_err > 0.5);
  }
}

TEST_CASE("no bounded product fits the correlation surface") {
  // Best uniform fit of f(alpha) g(beta) to E over the settings
  // {0, pi/8, pi/4}^2, |f|,|g| <= 1, by separable grid search. Any fit over
  // a larger grid is at least this bad on these points.
  const double settings[3] = {0.0, M_PI / 8.0, M_PI / 4.0};
  double e[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      e[i][j] = oracle::oracle_correlation(bell(BellKind::PhiPlus), settings[i],
                                           settings[j]);
    }
  }
  const int steps = 81;  // values in [-1, 1] at 0.025 resolution
  auto value = [&](int k) { return -1.0 + 2.0 * k / (steps - 1); };
  double best = 1e9;
  for (int x0 = 0; x0 < steps; ++x0) {
    for (int x1 = 0; x1 < steps; ++x1) {
      for (int x2 = 0; x2 < steps; ++x2) {
        double fs[3] = {value(x0), value(x1), value(x2)};
        double worst = 0.0;
        // optimal g decouples per column
        for (int j = 0; j < 3; ++j) {
          double col_best = 1e9;
          for (int y = 0; y < steps; ++y) {
            double g = value(y);
            double m = 0.0;
            for (int i = 0; i < 3; ++i) {
              m = std::max(m, std::abs(fs[i] * g - e[i][j]));
            }
            col_best = std::min(col_best, m);
          }
          worst = std::max(worst, col_best);
        }
        best = std::min(best, worst);
      }
    }
  }
  // grid resolution costs at most ~0.05; the true optimum stays far above 0.1
  CHECK(best > 0.15);
}
