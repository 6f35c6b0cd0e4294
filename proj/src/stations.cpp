#include "ctxphase/stations.hpp"

#include "ctxphase/contextual.hpp"
#include "ctxphase/errors.hpp"
#include "ctxphase/rng.hpp"

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>

namespace ctxphase::stations {

Frame Policy::frame_for(std::uint64_t seed, Side station, std::int64_t pair_id) const {
  switch (kind) {
    case PolicyKind::FixedZ: return Frame::Z;
    case PolicyKind::FixedX: return Frame::X;
    case PolicyKind::RandomZX: {
      std::uint64_t stream =
          station == Side::A ? rng::kStreamPolicyA : rng::kStreamPolicyB;
      return rng::coin(seed, stream, static_cast<std::uint64_t>(pair_id)) ? Frame::X
                                                                          : Frame::Z;
    }
  }
  throw std::logic_error("Policy::frame_for: unreachable");
}

Policy Policy::parse(std::string_view token) {
  if (token == "z" || token == "Z") return Policy{PolicyKind::FixedZ};
  if (token == "x" || token == "X") return Policy{PolicyKind::FixedX};
  if (token == "random") return Policy{PolicyKind::RandomZX};
  throw std::invalid_argument("Policy: expected z, x, or random, got " +
                              std::string(token));
}

const char* Policy::token() const {
  switch (kind) {
    case PolicyKind::FixedZ: return "z";
    case PolicyKind::FixedX: return "x";
    case PolicyKind::RandomZX: return "random";
  }
  return "?";
}

std::string source_stream(BellKind kind, std::int64_t n_pairs, std::uint64_t seed) {
  std::string out;
  for (std::int64_t pair = 0; pair < n_pairs; ++pair) {
    ContextClass klass =
        rng::coin(seed, rng::kStreamClassDraw, static_cast<std::uint64_t>(pair))
            ? ContextClass::Class1
            : ContextClass::Class2;
    out += wire::encode(wire::PairMsg{pair, kind, klass});
    out += '\n';
  }
  out += wire::encode(wire::EndMsg{});
  out += '\n';
  return out;
}

std::string station_handle_line(std::string_view line, Side station, Policy policy,
                                std::uint64_t seed) {
  wire::Message msg = wire::parse(line);
  if (std::holds_alternative<wire::EndMsg>(msg)) {
    return wire::encode(wire::EndMsg{}) + "\n";
  }
  if (!std::holds_alternative<wire::PairMsg>(msg)) {
    throw ProtocolError("station: unexpected message type on descriptor stream");
  }
  const auto& pair = std::get<wire::PairMsg>(msg);
  Frame setting = policy.frame_for(seed, station, pair.pair_id);
  // Classes are per measurement context. The descriptor's klass is the pair's
  // Z-context draw; the X context carries its own independent draw, derived
  // from the run seed so both stations resolve it identically without a
  // message. One context's draw says nothing about the other's: matched
  // frames stay deterministic while mismatched-frame products average out.
  ContextClass context_class =
      setting == Frame::Z
          ? pair.klass
          : (rng::coin(seed, rng::kStreamXContextClass,
                       static_cast<std::uint64_t>(pair.pair_id))
                 ? ContextClass::Class1
                 : ContextClass::Class2);
  contextual::LocalPair lp =
      contextual::local_states(pair.kind, context_class, setting);
  int outcome = frame_eigenvalue(station == Side::A ? lp.psi_a : lp.psi_b, setting);
  return wire::encode(wire::ReportMsg{pair.pair_id, station, setting, outcome,
                                      pair.klass}) +
         "\n";
}

std::string station_stream(std::string_view input, Side station, Policy policy,
                           std::uint64_t seed) {
  std::string out;
  std::size_t pos = 0;
  while (pos < input.size()) {
    std::size_t end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    std::string reply = station_handle_line(line, station, policy, seed);
    out += reply;
    if (reply == "type=end\n") break;
  }
  return out;
}

JoinResult join_reports(std::int64_t n_pairs, const std::vector<StationReport>& a,
                        const std::vector<StationReport>& b) {
  struct Slot {
    std::optional<StationReport> a, b;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(n_pairs));
  auto place = [&](const StationReport& r) {
    if (r.pair_id < 0 || r.pair_id >= n_pairs) {
      throw IntegrityError("join: report for unknown pair_id " +
                           std::to_string(r.pair_id));
    }
    auto& slot = slots[static_cast<std::size_t>(r.pair_id)];
    auto& cell = r.station == Side::A ? slot.a : slot.b;
    if (cell.has_value()) {
      throw IntegrityError("join: duplicate report for pair_id " +
                           std::to_string(r.pair_id));
    }
    cell = r;
  };
  for (const auto& r : a) place(r);
  for (const auto& r : b) place(r);

  JoinResult out;
  for (std::int64_t pair = 0; pair < n_pairs; ++pair) {
    const auto& slot = slots[static_cast<std::size_t>(pair)];
    if (!slot.a || !slot.b) {
      out.lost_pairs.push_back(pair);
      continue;
    }
    if (slot.a->klass != slot.b->klass) {
      throw IntegrityError("join: stations disagree on klass for pair_id " +
                           std::to_string(pair));
    }
    out.records.push_back(JoinedRecord{pair, slot.a->klass, slot.a->setting,
                                       slot.b->setting, slot.a->outcome,
                                       slot.b->outcome});
  }
  return out;
}

std::vector<SettingStats> settings_breakdown(const std::vector<JoinedRecord>& records) {
  std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> acc;
  for (const auto& r : records) {
    auto& cell = acc[{static_cast<int>(r.setting_a), static_cast<int>(r.setting_b)}];
    cell.first += 1;
    cell.second += r.a * r.b;
  }
  std::vector<SettingStats> out;
  for (const auto& [key, cell] : acc) {
    out.push_back(SettingStats{static_cast<Frame>(key.first),
                               static_cast<Frame>(key.second), cell.first,
                               static_cast<double>(cell.second) /
                                   static_cast<double>(cell.first)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Process harness.

namespace {

void write_all(int fd, std::string_view data) {
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error(std::string("stations: write failed: ") +
                               std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

[[noreturn]] void station_process(int in_fd, int out_fd, Side station, Policy policy,
                                  std::uint64_t seed) {
  try {
    std::string buffer;
    char chunk[4096];
    bool done = false;
    while (!done) {
      ssize_t n = ::read(in_fd, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error("station: read failed");
      }
      if (n == 0) break;  // source hung up
      buffer.append(chunk, static_cast<std::size_t>(n));
      std::size_t pos = 0;
      for (;;) {
        std::size_t end = buffer.find('\n', pos);
        if (end == std::string::npos) break;
        std::string line = buffer.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        std::string reply = station_handle_line(line, station, policy, seed);
        write_all(out_fd, reply);
        if (reply == "type=end\n") {
          done = true;
          break;
        }
      }
      buffer.erase(0, pos);
    }
    ::close(in_fd);
    ::close(out_fd);
    ::_exit(0);
  } catch (const std::exception& e) {
    std::cerr << "station process error: " << e.what() << "\n";
    ::_exit(1);
  }
}

[[noreturn]] void source_process(BellKind kind, std::int64_t n_pairs,
                                 std::uint64_t seed, int fd_a, int fd_b) {
  try {
    for (std::int64_t pair = 0; pair < n_pairs; ++pair) {
      ContextClass klass =
          rng::coin(seed, rng::kStreamClassDraw, static_cast<std::uint64_t>(pair))
              ? ContextClass::Class1
              : ContextClass::Class2;
      std::string line = wire::encode(wire::PairMsg{pair, kind, klass}) + "\n";
      write_all(fd_a, line);  // both stations get the same descriptor
      write_all(fd_b, line);
    }
    std::string end = wire::encode(wire::EndMsg{}) + "\n";
    write_all(fd_a, end);
    write_all(fd_b, end);
    ::close(fd_a);
    ::close(fd_b);
    ::_exit(0);
  } catch (const std::exception& e) {
    std::cerr << "source process error: " << e.what() << "\n";
    ::_exit(1);
  }
}

std::vector<StationReport> parse_report_stream(const std::string& raw, Side expected) {
  std::vector<StationReport> reports;
  bool ended = false;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    std::size_t end = raw.find('\n', pos);
    if (end == std::string::npos) end = raw.size();
    std::string_view line{raw.data() + pos, end - pos};
    pos = end + 1;
    if (line.empty()) continue;
    if (ended) {
      throw ProtocolError("collector: message after end marker");
    }
    wire::Message msg = wire::parse(line);
    if (std::holds_alternative<wire::EndMsg>(msg)) {
      ended = true;
      continue;
    }
    if (!std::holds_alternative<wire::ReportMsg>(msg)) {
      throw ProtocolError("collector: unexpected message type on report stream");
    }
    const auto& r = std::get<wire::ReportMsg>(msg);
    if (r.station != expected) {
      throw IntegrityError("collector: report from the wrong station");
    }
    reports.push_back(StationReport{r.pair_id, r.station, r.setting, r.outcome,
                                    r.klass, std::chrono::system_clock::now()});
  }
  return reports;
}

struct Pipe {
  int fds[2];
  Pipe() {
    if (::pipe(fds) != 0) {
      throw std::runtime_error("stations: pipe() failed");
    }
  }
  int read_end() const { return fds[0]; }
  int write_end() const { return fds[1]; }
};

void close_fds(std::initializer_list<int> fds) {
  for (int fd : fds) ::close(fd);
}

}  // namespace

RunResult run_experiment(BellKind kind, std::int64_t n_pairs, Policy policy_a,
                         Policy policy_b, std::uint64_t seed) {
  if (n_pairs < 1) {
    throw std::domain_error("run_experiment: n_pairs must be at least 1");
  }
  ::signal(SIGPIPE, SIG_IGN);

  Pipe src_a, src_b, a_col, b_col;

  pid_t pid_a = ::fork();
  if (pid_a < 0) throw std::runtime_error("stations: fork failed");
  if (pid_a == 0) {
    // Station A holds only its descriptor pipe and its report pipe.
    close_fds({src_a.write_end(), src_b.read_end(), src_b.write_end(),
               a_col.read_end(), b_col.read_end(), b_col.write_end()});
    station_process(src_a.read_end(), a_col.write_end(), Side::A, policy_a, seed);
  }

  pid_t pid_b = ::fork();
  if (pid_b < 0) throw std::runtime_error("stations: fork failed");
  if (pid_b == 0) {
    close_fds({src_b.write_end(), src_a.read_end(), src_a.write_end(),
               b_col.read_end(), a_col.read_end(), a_col.write_end()});
    station_process(src_b.read_end(), b_col.write_end(), Side::B, policy_b, seed);
  }

  pid_t pid_src = ::fork();
  if (pid_src < 0) throw std::runtime_error("stations: fork failed");
  if (pid_src == 0) {
    close_fds({src_a.read_end(), src_b.read_end(), a_col.read_end(),
               a_col.write_end(), b_col.read_end(), b_col.write_end()});
    source_process(kind, n_pairs, seed, src_a.write_end(), src_b.write_end());
  }

  // Collector keeps only the two report read ends.
  close_fds({src_a.read_end(), src_a.write_end(), src_b.read_end(),
             src_b.write_end(), a_col.write_end(), b_col.write_end()});

  RunResult result;
  struct pollfd pfds[2] = {{a_col.read_end(), POLLIN, 0},
                           {b_col.read_end(), POLLIN, 0}};
  std::string* sinks[2] = {&result.raw_a, &result.raw_b};
  bool open_fd[2] = {true, true};
  char chunk[8192];
  while (open_fd[0] || open_fd[1]) {
    for (int i = 0; i < 2; ++i) pfds[i].events = open_fd[i] ? POLLIN : 0;
    int rc = ::poll(pfds, 2, -1);
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("stations: poll failed");
    }
    for (int i = 0; i < 2; ++i) {
      if (!open_fd[i] || !(pfds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t n = ::read(pfds[i].fd, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error("stations: read failed");
      }
      if (n == 0) {
        ::close(pfds[i].fd);
        open_fd[i] = false;
      } else {
        sinks[i]->append(chunk, static_cast<std::size_t>(n));
      }
    }
  }

  for (pid_t pid : {pid_a, pid_b, pid_src}) {
    int status = 0;
    if (::waitpid(pid, &status, 0) < 0) {
      throw std::runtime_error("stations: waitpid failed");
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw std::runtime_error("stations: a harness process exited abnormally");
    }
  }

  std::vector<StationReport> reports_a = parse_report_stream(result.raw_a, Side::A);
  std::vector<StationReport> reports_b = parse_report_stream(result.raw_b, Side::B);
  JoinResult joined = join_reports(n_pairs, reports_a, reports_b);
  result.records = std::move(joined.records);
  result.lost_pairs = std::move(joined.lost_pairs);
  result.stats = settings_breakdown(result.records);
  std::int64_t class1 = 0;
  for (const auto& r : result.records) {
    class1 += r.klass == ContextClass::Class1 ? 1 : 0;
  }
  result.class1_frequency = result.records.empty()
                                ? 0.0
                                : static_cast<double>(class1) /
                                      static_cast<double>(result.records.size());
  result.routes = {{"source", "station_a"},
                   {"source", "station_b"},
                   {"station_a", "collector"},
                   {"station_b", "collector"}};
  result.route_between_stations = false;
  return result;
}

}  // namespace ctxphase::stations
