#pragma once

// Observable extraction: deterministic per-class joint outcomes, seeded
// Monte Carlo ensembles over classes, the four-term correlation expansion
// with its diagonal/off-diagonal split, closed-form fixtures, and CHSH.

#include "ctxphase/contextual.hpp"
#include "ctxphase/hilbert.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctxphase::measurement {

// A polarizer setting: a free angle, or a frame-aligned one (Z at 0,
// X at pi/4) that keeps its frame label.
struct Setting {
  double angle = 0.0;
  std::optional<Frame> frame;

  static Setting from_frame(Frame f) { return Setting{frame_angle(f), f}; }
  static Setting from_angle(double theta);
};

struct OutcomeRecord {
  std::int64_t pair_id;
  ContextClass klass;
  Setting setting_a;
  Setting setting_b;
  int a;  // +1 or -1
  int b;
};

enum class EstimateMethod { AnalyticExpansion, Oracle, MonteCarlo };

struct CorrelationEstimate {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::Oracle;
  std::optional<std::int64_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> stderr_of_mean;
};

// Deterministic outcome pair for a frame-aligned joint measurement: the
// eigenvalues of the two collapsed local kets.
std::pair<int, int> joint_outcome(BellKind kind, ContextClass klass, Frame frame);

struct EnsembleResult {
  std::vector<OutcomeRecord> records;  // ordered by pair_id
  CorrelationEstimate estimate;        // mean of a*b
  std::int64_t counts[2][2] = {{0, 0}, {0, 0}};  // [a][b], slot 0 = +1
  double class1_frequency = 0.0;
  double marginal_a = 0.0;  // mean of a
  double marginal_b = 0.0;
};

// Draws the class i.i.d. uniform per pair from a stream keyed by pair_id,
// then emits the deterministic joint outcome for each draw.
EnsembleResult sample_ensemble(BellKind kind, Frame frame, std::int64_t n,
                               std::uint64_t seed);

// Which two-product-term decomposition feeds the expansion: the canonical
// frame expansion, or a class lift's absorbed-phase symbols. All three give
// the same value; keeping them selectable lets tests show that.
enum class DecompositionSource { Canonical, LiftClass1, LiftClass2 };

struct CorrelationTerms {
  double diagonal = 0.0;      // the two matched-term products
  double off_diagonal = 0.0;  // the two cross-term products
  double total = 0.0;
  CorrelationEstimate estimate;  // method AnalyticExpansion
};

// <state| sigma_alpha (x) sigma_beta |state> expanded over the presentation
// u_A (x) v_B + x_A (x) y_B as four half-weighted products.
CorrelationTerms correlation_expansion(BellKind kind, Frame presentation_frame,
                                       double alpha, double beta,
                                       DecompositionSource source =
                                           DecompositionSource::Canonical);

struct ChshBreakdown {
  double e_ab, e_ab2, e_a2b, e_a2b2;
  double s;  // e_ab - e_ab2 + e_a2b + e_a2b2
};

// Correlations come from the oracle contraction.
ChshBreakdown chsh_detail(BellKind kind, double a, double a2, double b, double b2);
double chsh(BellKind kind, double a, double a2, double b, double b2);

// Two candidate closed-form tables are kept as fixtures:
//  - difference form: E = cos 2(alpha - beta) for every kind;
//  - listed form, per kind: PSI+ -> cos 2(a-b), PSI- -> cos 2(a+b),
//    PHI+ -> -cos 2(a+b), PHI- -> -cos 2(a-b).
// The report records, per kind, how far each fixture is from the oracle
// contraction over an angle grid and which simple form actually matches.
struct ClosedFormComparison {
  BellKind kind;
  double difference_form_max_err;
  double listed_form_max_err;
  bool difference_form_matches;  // max err < 1e-12
  bool listed_form_matches;
  std::string oracle_form;  // e.g. "cos2(a-b)", "-cos2(a+b)"
};

double difference_form(double alpha, double beta);
double listed_form(BellKind kind, double alpha, double beta);

std::vector<ClosedFormComparison> closed_form_report(int grid_steps = 72);

}  // namespace ctxphase::measurement
