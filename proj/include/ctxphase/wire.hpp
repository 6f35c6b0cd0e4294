#pragma once

// Newline-delimited key=value wire protocol between the source, station, and
// collector processes. One message per line, 512-byte cap, base-10 integers,
// fixed uppercase tokens. Unknown fields are ignored; a missing required
// field raises ProtocolError naming the field.

#include "ctxphase/hilbert.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace ctxphase::wire {

inline constexpr std::size_t kMaxLineBytes = 512;

struct PairMsg {
  std::int64_t pair_id;
  BellKind kind;
  ContextClass klass;
};

struct ReportMsg {
  std::int64_t pair_id;
  Side station;
  Frame setting;  // Z or X
  int outcome;    // +1 or -1
  ContextClass klass;
};

struct EndMsg {};

using Message = std::variant<PairMsg, ReportMsg, EndMsg>;

// Lines without the trailing newline.
std::string encode(const PairMsg& m);
std::string encode(const ReportMsg& m);
std::string encode(const EndMsg& m);

Message parse(std::string_view line);

BellKind parse_kind(std::string_view token);
ContextClass parse_class(std::string_view token);
Frame parse_frame(std::string_view token);  // Z or X only
Side parse_side(std::string_view token);

}  // namespace ctxphase::wire
