// Command-line front end: inspect lifts, sweep correlations, evaluate the
// CHSH combination, run seeded ensembles and the separated-stations harness.

#include <CLI11.hpp>
#include <json.hpp>

#include "ctxphase/contextual.hpp"
#include "ctxphase/errors.hpp"
#include "ctxphase/fixtures.hpp"
#include "ctxphase/freevec.hpp"
#include "ctxphase/measurement.hpp"
#include "ctxphase/oracle.hpp"
#include "ctxphase/stations.hpp"
#include "ctxphase/version.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace ctxphase;

enum class OutFormat { Pretty, Csv, JsonLines };

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string fmt_complex(Complex c) {
  std::string im = fmt15(c.imag());
  std::string sep = im.front() == '-' ? "" : "+";
  return fmt15(c.real()) + sep + im + "i";
}

double deg2rad(double deg) { return deg * M_PI / 180.0; }

BellKind parse_kind_token(const std::string& token) {
  if (token == "phi+") return BellKind::PhiPlus;
  if (token == "phi-") return BellKind::PhiMinus;
  if (token == "psi+") return BellKind::PsiPlus;
  if (token == "psi-") return BellKind::PsiMinus;
  throw CLI::ValidationError("--kind", "expected one of phi+ phi- psi+ psi-");
}

const char* kind_token(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
  }
  return "?";
}

ContextClass parse_class_token(int token) {
  if (token == 1) return ContextClass::Class1;
  if (token == 2) return ContextClass::Class2;
  throw CLI::ValidationError("--class", "expected 1 or 2");
}

Frame parse_frame_token(const std::string& token, bool allow_y = false) {
  if (token == "z") return Frame::Z;
  if (token == "x") return Frame::X;
  if (token == "y" && allow_y) return Frame::Y;
  throw CLI::ValidationError("--frame", allow_y ? "expected z, x, or y"
                                                : "expected z or x");
}

const char* frame_token(Frame f) {
  switch (f) {
    case Frame::Z: return "z";
    case Frame::X: return "x";
    case Frame::Y: return "y";
  }
  return "?";
}

OutFormat parse_format_token(const std::string& token) {
  if (token == "pretty") return OutFormat::Pretty;
  if (token == "csv") return OutFormat::Csv;
  if (token == "json-lines") return OutFormat::JsonLines;
  throw CLI::ValidationError("--format", "expected pretty, csv, or json-lines");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t(rd()) << 32) ^ rd();
}

std::string joined_argv(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

void print_header(const std::string& argv_line, std::optional<std::uint64_t> seed) {
  std::cout << "#";
  if (seed) std::cout << " seed=" << *seed;
  std::cout << " version=" << kVersion << " command=" << argv_line << "\n";
}

// ---------------------------------------------------------------------------

struct LiftArgs {
  std::string kind = "phi+";
  int klass = 1;
  std::string frame = "z";
  std::string format = "pretty";
  std::string fixtures_path;  // optional cross-check against the fixture file
};

// Finds the fixture record for (kind, klass, frame) and compares the sum
// text. Returns empty on match, a message otherwise.
std::string check_against_fixtures(const LiftArgs& a, Frame frame,
                                   const std::string& sum_text) {
  std::ifstream in(a.fixtures_path);
  if (!in.good()) return "fixture file not readable: " + a.fixtures_path;
  nlohmann::json doc = nlohmann::json::parse(in);
  const char* section = frame == Frame::Y ? "y_lifts" : "lift_table";
  std::string want_kind = to_string(parse_kind_token(a.kind));
  std::string want_klass = a.klass == 1 ? "CLASS1" : "CLASS2";
  for (const auto& entry : doc.at(section)) {
    if (entry.at("kind") != want_kind || entry.at("klass") != want_klass) continue;
    if (frame != Frame::Y &&
        entry.at("presentation_frame") != to_string(frame)) {
      continue;
    }
    if (entry.at("sum_text") != sum_text) {
      return "fixture sum differs: " + entry.at("sum_text").get<std::string>();
    }
    return "";
  }
  return "no fixture entry for this lift";
}

int cmd_lift(const LiftArgs& a, const std::string& argv_line) {
  BellKind kind = parse_kind_token(a.kind);
  ContextClass klass = parse_class_token(a.klass);
  Frame frame = parse_frame_token(a.frame, /*allow_y=*/true);
  OutFormat fmt = parse_format_token(a.format);
  print_header(argv_line, std::nullopt);

  contextual::Representative rep = frame == Frame::Y
                                       ? contextual::lift_y(kind, klass)
                                       : contextual::lift(kind, klass, frame);
  TensorState recon = freevec::quotient_map(rep.sum);
  double overlap = std::abs(recon.dot(bell(kind)));
  bool pass = overlap >= 1.0 - 1e-9;
  std::string sum_text = freevec::to_text(rep.sum);

  contextual::LocalPair lp = frame == Frame::Y
                                 ? contextual::y_local_states(kind, klass)
                                 : contextual::local_states(
                                       kind, klass, contextual::conjugate_frame(frame));

  std::string fixture_status;
  bool fixture_ok = true;
  if (!a.fixtures_path.empty()) {
    std::string mismatch = check_against_fixtures(a, frame, sum_text);
    fixture_ok = mismatch.empty();
    fixture_status = fixture_ok ? "MATCH" : "MISMATCH (" + mismatch + ")";
  }

  switch (fmt) {
    case OutFormat::Pretty: {
      std::cout << "kind=" << a.kind << " class=" << a.klass
                << " presentation_frame=" << frame_token(rep.presentation_frame)
                << "\n";
      std::cout << "sum: " << sum_text << "\n";
      std::cout << "local_phases: phi_a=" << fmt15(rep.phi_a)
                << " phi_b=" << fmt15(rep.phi_b) << "\n";
      std::cout << "reconstructed:";
      for (int i = 0; i < 4; ++i) std::cout << " " << fmt_complex(recon[i]);
      std::cout << "\n";
      std::cout << "collapsed(" << frame_token(lp.outcome_frame)
                << "): psi_a=" << (frame_eigenvalue(lp.psi_a, lp.outcome_frame) == 1
                                       ? "+1"
                                       : "-1")
                << " psi_b="
                << (frame_eigenvalue(lp.psi_b, lp.outcome_frame) == 1 ? "+1" : "-1")
                << "\n";
      if (!fixture_status.empty()) {
        std::cout << "fixture: " << fixture_status << "\n";
      }
      std::cout << "quotient: " << (pass ? "PASS" : "FAIL")
                << " overlap=" << fmt15(overlap) << "\n";
      break;
    }
    case OutFormat::Csv: {
      std::cout << "kind,class,presentation_frame,sum_text,overlap,quotient\n";
      std::cout << a.kind << "," << a.klass << ","
                << frame_token(rep.presentation_frame) << ",\"" << sum_text << "\","
                << fmt15(overlap) << "," << (pass ? "PASS" : "FAIL") << "\n";
      break;
    }
    case OutFormat::JsonLines: {
      nlohmann::json j = {{"kind", a.kind},
                          {"class", a.klass},
                          {"presentation_frame", frame_token(rep.presentation_frame)},
                          {"sum_text", sum_text},
                          {"sum", freevec::to_json(rep.sum)},
                          {"local_phases", {rep.phi_a, rep.phi_b}},
                          {"overlap", overlap},
                          {"quotient", pass ? "PASS" : "FAIL"}};
      std::cout << j.dump() << "\n";
      break;
    }
  }
  return pass && fixture_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct CorrelateArgs {
  std::string kind = "phi+";
  std::optional<double> alpha_deg;
  std::optional<double> beta_deg;
  std::string sweep;  // "start:stop:step" in degrees
  std::string presentation = "z";
  std::string decomposition = "canonical";
  std::string format = "csv";
};

std::vector<double> sweep_values(const std::string& range) {
  double start = 0, stop = 0, step = 0;
  if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      step <= 0.0 || stop < start) {
    throw CLI::ValidationError("--sweep", "expected start:stop:step with step > 0");
  }
  std::vector<double> values;
  for (double v = start; v <= stop + 1e-9; v += step) values.push_back(v);
  return values;
}

int cmd_correlate(const CorrelateArgs& a, const std::string& argv_line) {
  BellKind kind = parse_kind_token(a.kind);
  Frame presentation = parse_frame_token(a.presentation);
  OutFormat fmt = parse_format_token(a.format);
  measurement::DecompositionSource source;
  if (a.decomposition == "canonical") {
    source = measurement::DecompositionSource::Canonical;
  } else if (a.decomposition == "class1") {
    source = measurement::DecompositionSource::LiftClass1;
  } else if (a.decomposition == "class2") {
    source = measurement::DecompositionSource::LiftClass2;
  } else {
    throw CLI::ValidationError("--decomposition",
                               "expected canonical, class1, or class2");
  }

  std::vector<std::pair<double, double>> grid;
  if (!a.sweep.empty()) {
    auto values = sweep_values(a.sweep);
    for (double x : values) {
      for (double y : values) grid.emplace_back(x, y);
    }
  } else if (a.alpha_deg && a.beta_deg) {
    grid.emplace_back(*a.alpha_deg, *a.beta_deg);
  } else {
    throw CLI::ValidationError("correlate",
                               "provide --alpha and --beta, or --sweep");
  }

  print_header(argv_line, std::nullopt);
  if (fmt == OutFormat::Csv) {
    std::cout << "alpha_deg,beta_deg,E_analytic,E_oracle,diag_term,offdiag_term\n";
  }
  TensorState state = bell(kind);
  for (auto [alpha_deg, beta_deg] : grid) {
    double alpha = deg2rad(alpha_deg), beta = deg2rad(beta_deg);
    measurement::CorrelationTerms t =
        measurement::correlation_expansion(kind, presentation, alpha, beta, source);
    double truth = oracle::oracle_correlation(state, alpha, beta);
    switch (fmt) {
      case OutFormat::Pretty:
        std::cout << "alpha=" << fmt15(alpha_deg) << " beta=" << fmt15(beta_deg)
                  << " E=" << fmt15(t.total) << " oracle=" << fmt15(truth)
                  << " diag=" << fmt15(t.diagonal)
                  << " offdiag=" << fmt15(t.off_diagonal) << "\n";
        break;
      case OutFormat::Csv:
        std::cout << fmt15(alpha_deg) << "," << fmt15(beta_deg) << ","
                  << fmt15(t.total) << "," << fmt15(truth) << ","
                  << fmt15(t.diagonal) << "," << fmt15(t.off_diagonal) << "\n";
        break;
      case OutFormat::JsonLines:
        std::cout << "{\"alpha_deg\":" << fmt15(alpha_deg)
                  << ",\"beta_deg\":" << fmt15(beta_deg)
                  << ",\"E_analytic\":" << fmt15(t.total)
                  << ",\"E_oracle\":" << fmt15(truth)
                  << ",\"diag_term\":" << fmt15(t.diagonal)
                  << ",\"offdiag_term\":" << fmt15(t.off_diagonal) << "}\n";
        break;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ChshArgs {
  std::string kind = "phi+";
  std::vector<double> angles_deg;  // a, a2, b, b2
  std::string format = "pretty";
};

int cmd_chsh(const ChshArgs& a, const std::string& argv_line) {
  BellKind kind = parse_kind_token(a.kind);
  OutFormat fmt = parse_format_token(a.format);
  if (a.angles_deg.size() != 4) {
    throw CLI::ValidationError("--angles", "expected four comma-separated degrees");
  }
  double ra = deg2rad(a.angles_deg[0]), ra2 = deg2rad(a.angles_deg[1]);
  double rb = deg2rad(a.angles_deg[2]), rb2 = deg2rad(a.angles_deg[3]);
  measurement::ChshBreakdown d = measurement::chsh_detail(kind, ra, ra2, rb, rb2);
  print_header(argv_line, std::nullopt);
  switch (fmt) {
    case OutFormat::Pretty:
      std::cout << "kind=" << a.kind << " angles_deg=" << fmt15(a.angles_deg[0]) << ","
                << fmt15(a.angles_deg[1]) << "," << fmt15(a.angles_deg[2]) << ","
                << fmt15(a.angles_deg[3]) << "\n";
      std::cout << "E(a,b)=" << fmt15(d.e_ab) << " E(a,b')=" << fmt15(d.e_ab2)
                << " E(a',b)=" << fmt15(d.e_a2b) << " E(a',b')=" << fmt15(d.e_a2b2)
                << "\n";
      std::cout << "S=" << fmt15(d.s) << "\n";
      break;
    case OutFormat::Csv:
      std::cout << "kind,a_deg,a2_deg,b_deg,b2_deg,E_ab,E_ab2,E_a2b,E_a2b2,S\n";
      std::cout << a.kind << "," << fmt15(a.angles_deg[0]) << ","
                << fmt15(a.angles_deg[1]) << "," << fmt15(a.angles_deg[2]) << ","
                << fmt15(a.angles_deg[3]) << "," << fmt15(d.e_ab) << ","
                << fmt15(d.e_ab2) << "," << fmt15(d.e_a2b) << "," << fmt15(d.e_a2b2)
                << "," << fmt15(d.s) << "\n";
      break;
    case OutFormat::JsonLines:
      std::cout << "{\"kind\":\"" << a.kind << "\",\"E_ab\":" << fmt15(d.e_ab)
                << ",\"E_ab2\":" << fmt15(d.e_ab2) << ",\"E_a2b\":" << fmt15(d.e_a2b)
                << ",\"E_a2b2\":" << fmt15(d.e_a2b2) << ",\"S\":" << fmt15(d.s)
                << "}\n";
      break;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct EnsembleArgs {
  std::string kind = "psi-";
  std::string frame = "z";
  std::int64_t n = 1000;
  std::optional<std::uint64_t> seed;
  bool emit_records = false;
  std::string format = "pretty";
};

int cmd_ensemble(const EnsembleArgs& a, const std::string& argv_line) {
  BellKind kind = parse_kind_token(a.kind);
  Frame frame = parse_frame_token(a.frame);
  OutFormat fmt = parse_format_token(a.format);
  std::uint64_t seed = a.seed.value_or(fresh_seed());
  print_header(argv_line, seed);

  measurement::EnsembleResult res = measurement::sample_ensemble(kind, frame, a.n, seed);
  if (a.emit_records) {
    if (fmt == OutFormat::Csv) {
      std::cout << "pair_id,klass,setting_a,setting_b,a,b\n";
    }
    for (const auto& r : res.records) {
      int klass = r.klass == ContextClass::Class1 ? 1 : 2;
      switch (fmt) {
        case OutFormat::Pretty:
        case OutFormat::Csv:
          std::cout << r.pair_id << "," << klass << "," << frame_token(frame) << ","
                    << frame_token(frame) << "," << r.a << "," << r.b << "\n";
          break;
        case OutFormat::JsonLines:
          std::cout << "{\"pair_id\":" << r.pair_id << ",\"klass\":" << klass
                    << ",\"setting_a\":\"" << frame_token(frame)
                    << "\",\"setting_b\":\"" << frame_token(frame)
                    << "\",\"a\":" << r.a << ",\"b\":" << r.b << "}\n";
          break;
      }
    }
  }
  double stderr_mean = res.estimate.stderr_of_mean.value_or(0.0);
  switch (fmt) {
    case OutFormat::Pretty:
      std::cout << "kind=" << a.kind << " frame=" << a.frame << " n=" << a.n << "\n";
      std::cout << "counts: ++=" << res.counts[0][0] << " +-=" << res.counts[0][1]
                << " -+=" << res.counts[1][0] << " --=" << res.counts[1][1] << "\n";
      std::cout << "class1_frequency=" << fmt15(res.class1_frequency) << "\n";
      std::cout << "E=" << fmt15(res.estimate.value) << " stderr=" << fmt15(stderr_mean)
                << "\n";
      std::cout << "marginal_a=" << fmt15(res.marginal_a)
                << " marginal_b=" << fmt15(res.marginal_b) << "\n";
      break;
    case OutFormat::Csv:
      std::cout << "kind,frame,n,count_pp,count_pm,count_mp,count_mm,"
                   "class1_frequency,E,stderr,marginal_a,marginal_b\n";
      std::cout << a.kind << "," << a.frame << "," << a.n << "," << res.counts[0][0]
                << "," << res.counts[0][1] << "," << res.counts[1][0] << ","
                << res.counts[1][1] << "," << fmt15(res.class1_frequency) << ","
                << fmt15(res.estimate.value) << "," << fmt15(stderr_mean) << ","
                << fmt15(res.marginal_a) << "," << fmt15(res.marginal_b) << "\n";
      break;
    case OutFormat::JsonLines:
      std::cout << "{\"kind\":\"" << a.kind << "\",\"frame\":\"" << a.frame
                << "\",\"n\":" << a.n << ",\"count_pp\":" << res.counts[0][0]
                << ",\"count_pm\":" << res.counts[0][1]
                << ",\"count_mp\":" << res.counts[1][0]
                << ",\"count_mm\":" << res.counts[1][1]
                << ",\"class1_frequency\":" << fmt15(res.class1_frequency)
                << ",\"E\":" << fmt15(res.estimate.value)
                << ",\"stderr\":" << fmt15(stderr_mean)
                << ",\"marginal_a\":" << fmt15(res.marginal_a)
                << ",\"marginal_b\":" << fmt15(res.marginal_b) << "}\n";
      break;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct StationsArgs {
  std::string kind = "psi-";
  std::int64_t n = 1000;
  std::string policy_a = "z";
  std::string policy_b = "z";
  std::optional<std::uint64_t> seed;
  bool emit_records = false;
  std::string format = "pretty";
};

int cmd_stations(const StationsArgs& a, const std::string& argv_line) {
  BellKind kind = parse_kind_token(a.kind);
  OutFormat fmt = parse_format_token(a.format);
  stations::Policy pa = stations::Policy::parse(a.policy_a);
  stations::Policy pb = stations::Policy::parse(a.policy_b);
  std::uint64_t seed = a.seed.value_or(fresh_seed());
  print_header(argv_line, seed);

  stations::RunResult res = stations::run_experiment(kind, a.n, pa, pb, seed);
  if (a.emit_records) {
    if (fmt == OutFormat::Csv) {
      std::cout << "pair_id,klass,setting_a,setting_b,a,b\n";
    }
    for (const auto& r : res.records) {
      int klass = r.klass == ContextClass::Class1 ? 1 : 2;
      switch (fmt) {
        case OutFormat::Pretty:
        case OutFormat::Csv:
          std::cout << r.pair_id << "," << klass << "," << frame_token(r.setting_a)
                    << "," << frame_token(r.setting_b) << "," << r.a << "," << r.b
                    << "\n";
          break;
        case OutFormat::JsonLines:
          std::cout << "{\"pair_id\":" << r.pair_id << ",\"klass\":" << klass
                    << ",\"setting_a\":\"" << frame_token(r.setting_a)
                    << "\",\"setting_b\":\"" << frame_token(r.setting_b)
                    << "\",\"a\":" << r.a << ",\"b\":" << r.b << "}\n";
          break;
      }
    }
  }
  auto stats_token = [&](const stations::SettingStats& s) {
    return std::string(frame_token(s.setting_a)) + frame_token(s.setting_b);
  };
  switch (fmt) {
    case OutFormat::Pretty: {
      std::cout << "kind=" << a.kind << " n=" << a.n << " policy_a=" << pa.token()
                << " policy_b=" << pb.token() << "\n";
      std::cout << "pairs_joined=" << res.records.size()
                << " pairs_lost=" << res.lost_pairs.size() << "\n";
      std::cout << "class1_frequency=" << fmt15(res.class1_frequency) << "\n";
      for (const auto& s : res.stats) {
        std::cout << "setting " << stats_token(s) << ": count=" << s.count
                  << " E=" << fmt15(s.correlation) << "\n";
      }
      std::cout << "routes:";
      for (const auto& r : res.routes) std::cout << " " << r.from << "->" << r.to;
      std::cout << "\n";
      std::cout << "route_between_stations: "
                << (res.route_between_stations ? "PRESENT (FAIL)" : "NONE (PASS)")
                << "\n";
      break;
    }
    case OutFormat::Csv: {
      std::cout << "settings,count,E\n";
      for (const auto& s : res.stats) {
        std::cout << stats_token(s) << "," << s.count << "," << fmt15(s.correlation)
                  << "\n";
      }
      std::cout << "pairs_joined,pairs_lost,class1_frequency,route_between_stations\n";
      std::cout << res.records.size() << "," << res.lost_pairs.size() << ","
                << fmt15(res.class1_frequency) << ","
                << (res.route_between_stations ? "present" : "none") << "\n";
      break;
    }
    case OutFormat::JsonLines: {
      for (const auto& s : res.stats) {
        std::cout << "{\"settings\":\"" << stats_token(s) << "\",\"count\":" << s.count
                  << ",\"E\":" << fmt15(s.correlation) << "}\n";
      }
      std::cout << "{\"pairs_joined\":" << res.records.size()
                << ",\"pairs_lost\":" << res.lost_pairs.size()
                << ",\"class1_frequency\":" << fmt15(res.class1_frequency)
                << ",\"route_between_stations\":\""
                << (res.route_between_stations ? "present" : "none") << "\"}\n";
      break;
    }
  }
  return res.route_between_stations ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct IsolatedArgs {
  std::string kind = "psi+";
  int klass = 1;
  std::string frame = "z";   // configured context
  std::string device = "z";  // measuring device
  std::int64_t n = 10;
  std::optional<std::uint64_t> seed;
  std::string format = "pretty";
};

int cmd_isolated(const IsolatedArgs& a, const std::string& argv_line) {
  BellKind kind = parse_kind_token(a.kind);
  ContextClass klass = parse_class_token(a.klass);
  Frame configured = parse_frame_token(a.frame);
  Frame device = parse_frame_token(a.device);
  OutFormat fmt = parse_format_token(a.format);
  std::uint64_t seed = a.seed.value_or(fresh_seed());
  print_header(argv_line, seed);

  auto seq = contextual::isolated_sequence(kind, klass, configured, device,
                                           static_cast<int>(a.n), seed);
  double mean = 0.0;
  for (int v : seq) mean += v;
  mean /= double(seq.size());
  switch (fmt) {
    case OutFormat::Pretty: {
      std::cout << "kind=" << a.kind << " class=" << a.klass << " frame=" << a.frame
                << " device=" << a.device << " n=" << a.n << "\n";
      std::cout << "outcomes:";
      for (int v : seq) std::cout << (v == 1 ? " +1" : " -1");
      std::cout << "\n";
      std::cout << "mean=" << fmt15(mean) << "\n";
      break;
    }
    case OutFormat::Csv: {
      std::cout << "index,outcome\n";
      for (std::size_t i = 0; i < seq.size(); ++i) {
        std::cout << i << "," << seq[i] << "\n";
      }
      break;
    }
    case OutFormat::JsonLines: {
      for (std::size_t i = 0; i < seq.size(); ++i) {
        std::cout << "{\"index\":" << i << ",\"outcome\":" << seq[i] << "}\n";
      }
      break;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_closedforms(const std::string& format, const std::string& argv_line) {
  OutFormat fmt = parse_format_token(format);
  print_header(argv_line, std::nullopt);
  auto report = measurement::closed_form_report();
  if (fmt == OutFormat::Csv) {
    std::cout << "kind,difference_form_max_err,listed_form_max_err,"
                 "difference_form_matches,listed_form_matches,oracle_form\n";
  }
  for (const auto& row : report) {
    switch (fmt) {
      case OutFormat::Pretty:
        std::cout << "kind=" << kind_token(row.kind)
                  << " difference_form[cos2(a-b)] err="
                  << fmt15(row.difference_form_max_err)
                  << (row.difference_form_matches ? " MATCH" : " MISMATCH")
                  << " listed_form err=" << fmt15(row.listed_form_max_err)
                  << (row.listed_form_matches ? " MATCH" : " MISMATCH")
                  << " oracle_form=" << row.oracle_form << "\n";
        break;
      case OutFormat::Csv:
        std::cout << kind_token(row.kind) << "," << fmt15(row.difference_form_max_err)
                  << "," << fmt15(row.listed_form_max_err) << ","
                  << (row.difference_form_matches ? "1" : "0") << ","
                  << (row.listed_form_matches ? "1" : "0") << "," << row.oracle_form
                  << "\n";
        break;
      case OutFormat::JsonLines:
        std::cout << "{\"kind\":\"" << kind_token(row.kind)
                  << "\",\"difference_form_max_err\":"
                  << fmt15(row.difference_form_max_err)
                  << ",\"listed_form_max_err\":" << fmt15(row.listed_form_max_err)
                  << ",\"difference_form_matches\":"
                  << (row.difference_form_matches ? "true" : "false")
                  << ",\"listed_form_matches\":"
                  << (row.listed_form_matches ? "true" : "false")
                  << ",\"oracle_form\":\"" << row.oracle_form << "\"}\n";
        break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contextual-phase simulator for separated measurements on "
               "entangled qubit pairs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string argv_line = joined_argv(argc, argv);

  LiftArgs lift_args;
  auto* lift_cmd = app.add_subcommand("lift", "print a class representative and "
                                              "check its quotient image");
  lift_cmd->add_option("--kind", lift_args.kind, "phi+ phi- psi+ psi-")->required();
  lift_cmd->add_option("--class", lift_args.klass, "1 or 2")->required();
  lift_cmd->add_option("--frame", lift_args.frame, "presentation frame: z, x, or y");
  lift_cmd->add_option("--format", lift_args.format, "pretty, csv, json-lines");
  lift_cmd->add_option("--fixtures", lift_args.fixtures_path,
                       "cross-check against a fixture file");

  CorrelateArgs corr_args;
  auto* corr_cmd = app.add_subcommand("correlate",
                                      "expansion vs oracle correlation at angles");
  corr_cmd->add_option("--kind", corr_args.kind)->required();
  double alpha_in = 0, beta_in = 0;
  auto* alpha_opt = corr_cmd->add_option("--alpha", alpha_in, "degrees");
  auto* beta_opt = corr_cmd->add_option("--beta", beta_in, "degrees");
  corr_cmd->add_option("--sweep", corr_args.sweep, "start:stop:step in degrees");
  corr_cmd->add_option("--presentation", corr_args.presentation, "z or x");
  corr_cmd->add_option("--decomposition", corr_args.decomposition,
                       "canonical, class1, or class2");
  corr_cmd->add_option("--format", corr_args.format);

  ChshArgs chsh_args;
  auto* chsh_cmd = app.add_subcommand("chsh", "CHSH combination from the oracle");
  chsh_cmd->add_option("--kind", chsh_args.kind)->required();
  chsh_cmd->add_option("--angles", chsh_args.angles_deg,
                       "a,a2,b,b2 in degrees")->required()->delimiter(',');
  chsh_cmd->add_option("--format", chsh_args.format);

  EnsembleArgs ens_args;
  auto* ens_cmd = app.add_subcommand("ensemble", "seeded class-mixture ensemble");
  ens_cmd->add_option("--kind", ens_args.kind)->required();
  ens_cmd->add_option("--frame", ens_args.frame, "z or x")->required();
  ens_cmd->add_option("--n", ens_args.n)->required()->check(CLI::PositiveNumber);
  std::uint64_t ens_seed = 0;
  auto* ens_seed_opt = ens_cmd->add_option("--seed", ens_seed);
  ens_cmd->add_flag("--emit-records", ens_args.emit_records, "stream outcome records");
  ens_cmd->add_option("--format", ens_args.format);

  StationsArgs st_args;
  auto* st_cmd = app.add_subcommand("stations", "separated-stations process harness");
  st_cmd->add_option("--kind", st_args.kind)->required();
  st_cmd->add_option("--n", st_args.n)->required()->check(CLI::PositiveNumber);
  st_cmd->add_option("--policy-a", st_args.policy_a, "z, x, or random");
  st_cmd->add_option("--policy-b", st_args.policy_b, "z, x, or random");
  std::uint64_t st_seed = 0;
  auto* st_seed_opt = st_cmd->add_option("--seed", st_seed);
  st_cmd->add_flag("--emit-records", st_args.emit_records);
  st_cmd->add_option("--format", st_args.format);

  IsolatedArgs iso_args;
  auto* iso_cmd = app.add_subcommand("isolated",
                                     "device readings on one surviving subsystem");
  iso_cmd->add_option("--kind", iso_args.kind)->required();
  iso_cmd->add_option("--class", iso_args.klass)->required();
  iso_cmd->add_option("--frame", iso_args.frame, "configured context: z or x");
  iso_cmd->add_option("--device", iso_args.device, "device frame: z or x");
  iso_cmd->add_option("--n", iso_args.n)->check(CLI::PositiveNumber);
  std::uint64_t iso_seed = 0;
  auto* iso_seed_opt = iso_cmd->add_option("--seed", iso_seed);
  iso_cmd->add_option("--format", iso_args.format);

  std::string forms_format = "pretty";
  auto* forms_cmd = app.add_subcommand("closedforms",
                                       "closed-form fixtures vs the oracle");
  forms_cmd->add_option("--format", forms_format);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "dump the lift fixture records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (lift_cmd->parsed()) return cmd_lift(lift_args, argv_line);
    if (corr_cmd->parsed()) {
      if (alpha_opt->count()) corr_args.alpha_deg = alpha_in;
      if (beta_opt->count()) corr_args.beta_deg = beta_in;
      return cmd_correlate(corr_args, argv_line);
    }
    if (chsh_cmd->parsed()) return cmd_chsh(chsh_args, argv_line);
    if (ens_cmd->parsed()) {
      if (ens_seed_opt->count()) ens_args.seed = ens_seed;
      return cmd_ensemble(ens_args, argv_line);
    }
    if (st_cmd->parsed()) {
      if (st_seed_opt->count()) st_args.seed = st_seed;
      return cmd_stations(st_args, argv_line);
    }
    if (iso_cmd->parsed()) {
      if (iso_seed_opt->count()) iso_args.seed = iso_seed;
      return cmd_isolated(iso_args, argv_line);
    }
    if (forms_cmd->parsed()) return cmd_closedforms(forms_format, argv_line);
    if (fixtures_cmd->parsed()) {
      print_header(argv_line, std::nullopt);
      std::cout << ctxphase::fixtures::lift_fixtures_text();
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
