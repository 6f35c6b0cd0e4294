#include "ctxphase/wire.hpp"

#include "ctxphase/errors.hpp"

#include <charconv>
#include <map>
#include <string>

namespace ctxphase::wire {

namespace {

std::map<std::string_view, std::string_view> split_fields(std::string_view line) {
  std::map<std::string_view, std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    std::string_view token = line.substr(pos, end - pos);
    std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw ProtocolError("wire: token without '=': " + std::string(token));
    }
    fields[token.substr(0, eq)] = token.substr(eq + 1);
    pos = end;
  }
  return fields;
}

std::string_view require(const std::map<std::string_view, std::string_view>& fields,
                         std::string_view name) {
  auto it = fields.find(name);
  if (it == fields.end()) {
    throw ProtocolError("wire: missing required field '" + std::string(name) + "'");
  }
  return it->second;
}

std::int64_t parse_int(std::string_view name, std::string_view token) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.begin(), token.end(), value);
  if (ec != std::errc{} || ptr != token.end()) {
    throw ProtocolError("wire: field '" + std::string(name) +
                        "' is not a base-10 integer: " + std::string(token));
  }
  return value;
}

}  // namespace

BellKind parse_kind(std::string_view token) {
  if (token == "PHI_PLUS") return BellKind::PhiPlus;
  if (token == "PHI_MINUS") return BellKind::PhiMinus;
  if (token == "PSI_PLUS") return BellKind::PsiPlus;
  if (token == "PSI_MINUS") return BellKind::PsiMinus;
  throw ProtocolError("wire: unknown kind token: " + std::string(token));
}

ContextClass parse_class(std::string_view token) {
  if (token == "CLASS1") return ContextClass::Class1;
  if (token == "CLASS2") return ContextClass::Class2;
  throw ProtocolError("wire: unknown klass token: " + std::string(token));
}

Frame parse_frame(std::string_view token) {
  if (token == "Z") return Frame::Z;
  if (token == "X") return Frame::X;
  throw ProtocolError("wire: unknown setting token: " + std::string(token));
}

Side parse_side(std::string_view token) {
  if (token == "A") return Side::A;
  if (token == "B") return Side::B;
  throw ProtocolError("wire: unknown station token: " + std::string(token));
}

std::string encode(const PairMsg& m) {
  return "type=pair pair_id=" + std::to_string(m.pair_id) + " kind=" +
         to_string(m.kind) + " klass=" + to_string(m.klass);
}

std::string encode(const ReportMsg& m) {
  return "type=report pair_id=" + std::to_string(m.pair_id) + " station=" +
         to_string(m.station) + " setting=" + to_string(m.setting) +
         " outcome=" + std::to_string(m.outcome) + " klass=" + to_string(m.klass);
}

std::string encode(const EndMsg&) { return "type=end"; }

Message parse(std::string_view line) {
  if (line.size() > kMaxLineBytes) {
    throw ProtocolError("wire: line exceeds " + std::to_string(kMaxLineBytes) +
                        " bytes");
  }
  auto fields = split_fields(line);
  std::string_view type = require(fields, "type");
  if (type == "end") {
    return EndMsg{};
  }
  if (type == "pair") {
    PairMsg m{};
    m.pair_id = parse_int("pair_id", require(fields, "pair_id"));
    m.kind = parse_kind(require(fields, "kind"));
    m.klass = parse_class(require(fields, "klass"));
    return m;
  }
  if (type == "report") {
    ReportMsg m{};
    m.pair_id = parse_int("pair_id", require(fields, "pair_id"));
    m.station = parse_side(require(fields, "station"));
    m.setting = parse_frame(require(fields, "setting"));
    std::int64_t outcome = parse_int("outcome", require(fields, "outcome"));
    if (outcome != 1 && outcome != -1) {
      throw ProtocolError("wire: field 'outcome' must be 1 or -1");
    }
    m.outcome = static_cast<int>(outcome);
    m.klass = parse_class(require(fields, "klass"));
    return m;
  }
  throw ProtocolError("wire: unknown message type: " + std::string(type));
}

}  // namespace ctxphase::wire
