#pragma once

// Separated-subsystems harness: a source process emits pair descriptors to
// two station processes; each station measures locally and reports to the
// collector. The only transport routes are source->station and
// station->collector pipes -- the stations hold no descriptor to one another,
// so the absence of a channel between them is a property of the process
// topology, not a convention.

#include "ctxphase/hilbert.hpp"
#include "ctxphase/wire.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ctxphase::stations {

enum class PolicyKind { FixedZ, FixedX, RandomZX };

// A station's setting schedule. Random draws are keyed by (seed, station,
// pair_id), so one station's choices never depend on the other's.
struct Policy {
  PolicyKind kind = PolicyKind::FixedZ;

  Frame frame_for(std::uint64_t seed, Side station, std::int64_t pair_id) const;
  static Policy parse(std::string_view token);  // "z", "x", "random"
  const char* token() const;
};

struct StationReport {
  std::int64_t pair_id;
  Side station;
  Frame setting;
  int outcome;
  ContextClass klass;
  std::chrono::system_clock::time_point wall_clock;  // collector ingest time
};

struct JoinedRecord {
  std::int64_t pair_id;
  ContextClass klass;
  Frame setting_a;
  Frame setting_b;
  int a;
  int b;
};

struct SettingStats {
  Frame setting_a;
  Frame setting_b;
  std::int64_t count = 0;
  double correlation = 0.0;  // mean of a*b
};

struct Route {
  std::string from, to;
};

struct RunResult {
  std::vector<JoinedRecord> records;  // ordered by pair_id
  std::vector<SettingStats> stats;    // one row per observed setting combo
  std::vector<std::int64_t> lost_pairs;
  std::vector<Route> routes;
  bool route_between_stations = false;
  double class1_frequency = 0.0;
  std::string raw_a;  // station A's report stream, byte for byte
  std::string raw_b;
};

// Spawns source and both stations as separate processes over local pipes and
// collects in the calling process. Deterministic for a fixed seed; station
// A's byte stream does not depend on station B's policy.
RunResult run_experiment(BellKind kind, std::int64_t n_pairs, Policy policy_a,
                         Policy policy_b, std::uint64_t seed);

// Pure cores of the three processes, also used directly by tests.
std::string source_stream(BellKind kind, std::int64_t n_pairs, std::uint64_t seed);
std::string station_handle_line(std::string_view line, Side station, Policy policy,
                                std::uint64_t seed);  // report or end line + '\n'
std::string station_stream(std::string_view input, Side station, Policy policy,
                           std::uint64_t seed);

struct JoinResult {
  std::vector<JoinedRecord> records;
  std::vector<std::int64_t> lost_pairs;
};

// Order-insensitive join keyed by pair_id. Raises IntegrityError on
// duplicate reports or class disagreement between the two stations.
JoinResult join_reports(std::int64_t n_pairs, const std::vector<StationReport>& a,
                        const std::vector<StationReport>& b);

std::vector<SettingStats> settings_breakdown(const std::vector<JoinedRecord>& records);

}  // namespace ctxphase::stations
