#include "ctxphase/freevec.hpp"

#include "ctxphase/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ctxphase::freevec {

namespace {

bool phases_equal(Complex a, Complex b) { return std::abs(a - b) <= kTightTol; }

int frame_rank(Frame f) {
  switch (f) {
    case Frame::Z: return 0;
    case Frame::X: return 1;
    case Frame::Y: return 2;
  }
  return 3;
}

}  // namespace

SubSymbol sub(Frame frame, int index, Complex phase) {
  if (index != 0 && index != 1) {
    throw std::domain_error("sub: index must be 0 or 1");
  }
  if (std::abs(std::abs(phase) - 1.0) > kTightTol) {
    throw std::domain_error("sub: symbol phase must have unit modulus");
  }
  return SubSymbol{frame, index, phase};
}

Ket symbol_ket(const SubSymbol& s) { return frame_ket(s.frame, s.index, s.phase); }

bool structurally_equal(const SubSymbol& a, const SubSymbol& b) {
  return a.frame == b.frame && a.index == b.index && phases_equal(a.phase, b.phase);
}

bool symbol_less(const SubSymbol& a, const SubSymbol& b) {
  if (a.frame != b.frame) return frame_rank(a.frame) < frame_rank(b.frame);
  if (a.index != b.index) return a.index < b.index;
  return std::arg(a.phase) < std::arg(b.phase);
}

bool structurally_equal(const PairSymbol& a, const PairSymbol& b) {
  return structurally_equal(a.a, b.a) && structurally_equal(a.b, b.b);
}

bool symbol_less(const PairSymbol& a, const PairSymbol& b) {
  if (!structurally_equal(a.a, b.a)) return symbol_less(a.a, b.a);
  return symbol_less(a.b, b.b);
}

PairTerm absorb_scalar(const PairTerm& term, Side side) {
  if (std::abs(std::abs(term.coeff) - 1.0) > kTightTol) {
    throw std::domain_error("absorb_scalar: coefficient must have unit modulus");
  }
  PairTerm out = term;
  out.coeff = Complex{1.0, 0.0};
  if (side == Side::A) {
    out.sym.a.phase *= term.coeff;
  } else {
    out.sym.b.phase *= term.coeff;
  }
  return out;
}

TensorState quotient_image_unnormalized(const PairSum& f) {
  TensorState s = TensorState::Zero();
  for (const auto& t : f) {
    s += t.coeff * tensor(symbol_ket(t.sym.a), symbol_ket(t.sym.b));
  }
  return s;
}

TensorState quotient_map(const PairSum& f) {
  TensorState s = quotient_image_unnormalized(f);
  double n = s.norm();
  if (n < kDegenerateNorm) {
    throw DegenerateSumError(
        "quotient_map: formal sum lies in the relation subspace (zero image)");
  }
  return s / n;
}

bool equivalent_mod_R(const PairSum& f, const PairSum& g, double tol) {
  TensorState a = quotient_image_unnormalized(f);
  TensorState b = quotient_image_unnormalized(g);
  bool a_zero = a.norm() < kDegenerateNorm;
  bool b_zero = b.norm() < kDegenerateNorm;
  if (a_zero || b_zero) return a_zero && b_zero;
  return equal_up_to_global_phase(TensorState(a.normalized()),
                                  TensorState(b.normalized()), tol);
}

Ket identify_image_unnormalized(const SubSum& f) {
  Ket k = Ket::Zero();
  for (const auto& t : f) {
    k += t.coeff * symbol_ket(t.sym);
  }
  return k;
}

Ket identify_T(const SubSum& f) {
  Ket k = identify_image_unnormalized(f);
  double n = k.norm();
  if (n < kDegenerateNorm) {
    throw DegenerateSumError(
        "identify_T: destructive interference, local sum has zero norm");
  }
  return k / n;
}

template <typename S>
std::vector<Term<S>> normal_form(std::vector<Term<S>> f) {
  std::stable_sort(f.begin(), f.end(), [](const Term<S>& a, const Term<S>& b) {
    return symbol_less(a.sym, b.sym);
  });
  std::vector<Term<S>> out;
  for (const auto& t : f) {
    if (!out.empty() && structurally_equal(out.back().sym, t.sym)) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term<S>& t) { return std::abs(t.coeff) <= kTightTol; });
  return out;
}

template SubSum normal_form(SubSum);
template PairSum normal_form(PairSum);

namespace {

// ru + sv as formal terms: a single coefficient-carrying symbol when the
// combined ket lies on a basis ray, otherwise one term per summand.
std::vector<SubTerm> combine_coordinate(Complex r, const SubSymbol& u, Complex s,
                                        const SubSymbol& v) {
  Ket combo = r * symbol_ket(u) + s * symbol_ket(v);
  if (combo.norm() <= kTightTol) {
    return {};  // the zero vector of the subsystem space; contributes nothing
  }
  for (Frame f : {Frame::Z, Frame::X, Frame::Y}) {
    for (int i = 0; i < 2; ++i) {
      Ket base = frame_ket(f, i);
      Complex c = base.dot(combo);  // component along the candidate ray
      if ((combo - c * base).norm() <= 1e-12 * std::max(1.0, std::abs(c))) {
        return {SubTerm{c, SubSymbol{f, i, Complex{1.0, 0.0}}}};
      }
    }
  }
  return {SubTerm{r, u}, SubTerm{s, v}};
}

}  // namespace

PairSum relation_generator(RelationKind kind, Complex r, Complex s,
                           const SubSymbol& u, const SubSymbol& v,
                           const SubSymbol& w) {
  PairSum gen;
  if (kind == RelationKind::LeftLinearity) {
    gen.push_back(PairTerm{r, PairSymbol{u, w}});
    gen.push_back(PairTerm{s, PairSymbol{v, w}});
    for (const auto& t : combine_coordinate(r, u, s, v)) {
      gen.push_back(PairTerm{-t.coeff, PairSymbol{t.sym, w}});
    }
  } else {
    gen.push_back(PairTerm{r, PairSymbol{u, v}});
    gen.push_back(PairTerm{s, PairSymbol{u, w}});
    for (const auto& t : combine_coordinate(r, v, s, w)) {
      gen.push_back(PairTerm{-t.coeff, PairSymbol{u, t.sym}});
    }
  }
  return gen;
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string phase_prefix(Complex p) {
  if (p == Complex{1.0, 0.0}) return "";
  if (p == Complex{-1.0, 0.0}) return "-";
  if (p == Complex{0.0, 1.0}) return "i";
  if (p == Complex{0.0, -1.0}) return "-i";
  return "e^{i" + fmt_double(std::arg(p)) + "}";
}

std::string frame_mark(Frame f) {
  switch (f) {
    case Frame::Z: return "";
    case Frame::X: return "'";
    case Frame::Y: return "''";
  }
  return "";
}

std::string coeff_text(Complex c, bool* joined_minus) {
  *joined_minus = false;
  if (c == Complex{1.0, 0.0}) return "";
  if (c == Complex{-1.0, 0.0}) {
    *joined_minus = true;
    return "";
  }
  if (c.imag() == 0.0) {
    if (c.real() < 0.0) {
      *joined_minus = true;
      return fmt_double(-c.real());
    }
    return fmt_double(c.real());
  }
  std::string im = fmt_double(c.imag());
  std::string sep = im.front() == '-' ? "" : "+";
  return "(" + fmt_double(c.real()) + sep + im + "i)";
}

template <typename S>
std::string sum_to_text(const std::vector<Term<S>>& f) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool joined_minus = false;
    std::string coeff = coeff_text(f[i].coeff, &joined_minus);
    if (i == 0) {
      if (joined_minus) out += "-";
    } else {
      out += joined_minus ? " - " : " + ";
    }
    out += coeff + to_text(f[i].sym);
  }
  return out;
}

// --- parsing ---------------------------------------------------------------

// The cursor walks an owned, NUL-terminated string so strtod stays in bounds.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) {
      throw std::invalid_argument(std::string("formal-sum parse: expected '") + c +
                                  "' at offset " + std::to_string(pos));
    }
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("formal-sum parse: " + what + " at offset " +
                                std::to_string(pos));
  }
};

double parse_number(Cursor& c) {
  c.skip_ws();
  const char* begin = c.text.data() + c.pos;
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin) c.fail("expected a number");
  c.pos += static_cast<std::size_t>(end - begin);
  return v;
}

SubSymbol parse_symbol(Cursor& c) {
  c.skip_ws();
  c.expect('|');
  Complex phase{1.0, 0.0};
  if (c.peek() == 'e') {  // |e^{i<arg>}0'>
    ++c.pos;
    c.expect('^');
    c.expect('{');
    c.expect('i');
    double arg = parse_number(c);
    c.expect('}');
    phase = std::polar(1.0, arg);
  } else {
    if (c.consume('-')) phase = -phase;
    if (c.consume('i')) phase *= Complex{0.0, 1.0};
  }
  int index;
  if (c.consume('0')) {
    index = 0;
  } else if (c.consume('1')) {
    index = 1;
  } else {
    c.fail("expected ket index 0 or 1");
  }
  Frame frame = Frame::Z;
  if (c.consume('\'')) {
    frame = c.consume('\'') ? Frame::Y : Frame::X;
  }
  c.expect('>');
  return SubSymbol{frame, index, phase};
}

SubSymbol parse_sub_atom(Cursor& c) { return parse_symbol(c); }

PairSymbol parse_pair_atom(Cursor& c) {
  c.skip_ws();
  c.expect('(');
  SubSymbol a = parse_symbol(c);
  c.skip_ws();
  c.expect(',');
  SubSymbol b = parse_symbol(c);
  c.skip_ws();
  c.expect(')');
  return PairSymbol{a, b};
}

// Coefficient in front of an atom: absent (1), real number, or (re+imi).
Complex parse_coeff(Cursor& c) {
  c.skip_ws();
  if (c.peek() == '(') {
    // Lookahead: a parenthesized complex coefficient starts with a digit,
    // sign, or dot; a pair atom starts with '|'.
    std::size_t save = c.pos;
    ++c.pos;
    c.skip_ws();
    char n = c.peek();
    bool complex_coeff = std::isdigit(static_cast<unsigned char>(n)) || n == '-' ||
                         n == '+' || n == '.';
    if (!complex_coeff) {
      c.pos = save;
      return Complex{1.0, 0.0};
    }
    double re = parse_number(c);
    c.skip_ws();
    double im = parse_number(c);
    c.expect('i');
    c.skip_ws();
    c.expect(')');
    return Complex{re, im};
  }
  char n = c.peek();
  if (std::isdigit(static_cast<unsigned char>(n)) || n == '.') {
    return Complex{parse_number(c), 0.0};
  }
  return Complex{1.0, 0.0};
}

template <typename S, typename AtomParser>
std::vector<Term<S>> parse_sum(const std::string& text, AtomParser parse_atom) {
  Cursor c{text};
  c.skip_ws();
  std::vector<Term<S>> out;
  if (c.at_end()) c.fail("empty input");
  if (c.peek() == '0') {  // the empty sum prints as "0"
    std::size_t save = c.pos;
    ++c.pos;
    if (c.at_end()) return out;
    c.pos = save;
  }
  double sign = 1.0;
  if (c.consume('-')) sign = -1.0;
  for (;;) {
    Complex coeff = sign * parse_coeff(c);
    S sym = parse_atom(c);
    out.push_back(Term<S>{coeff, sym});
    if (c.at_end()) break;
    if (c.consume('+')) {
      sign = 1.0;
    } else if (c.consume('-')) {
      sign = -1.0;
    } else {
      c.fail("expected '+' or '-' between terms");
    }
  }
  return out;
}

}  // namespace

std::string to_text(const SubSymbol& s) {
  // Phase spelled inside the ket bars: |-1>, |i0>, |e^{i0.5}1'>.
  return "|" + phase_prefix(s.phase) + std::to_string(s.index) + frame_mark(s.frame) + ">";
}

std::string to_text(const PairSymbol& s) {
  return "(" + to_text(s.a) + "," + to_text(s.b) + ")";
}

std::string to_text(const SubSum& f) { return sum_to_text(f); }
std::string to_text(const PairSum& f) { return sum_to_text(f); }

SubSum parse_sub_sum(std::string_view text) {
  return parse_sum<SubSymbol>(std::string(text), parse_sub_atom);
}

PairSum parse_pair_sum(std::string_view text) {
  return parse_sum<PairSymbol>(std::string(text), parse_pair_atom);
}

// ---------------------------------------------------------------------------
// Structured record form.

namespace {

nlohmann::json symbol_json(const SubSymbol& s) {
  return {{"frame", to_string(s.frame)},
          {"index", s.index},
          {"phase", {s.phase.real(), s.phase.imag()}}};
}

SubSymbol symbol_from_json(const nlohmann::json& j) {
  std::string f = j.at("frame").get<std::string>();
  Frame frame;
  if (f == "Z") {
    frame = Frame::Z;
  } else if (f == "X") {
    frame = Frame::X;
  } else if (f == "Y") {
    frame = Frame::Y;
  } else {
    throw std::invalid_argument("symbol_from_json: unknown frame " + f);
  }
  auto p = j.at("phase");
  return sub(frame, j.at("index").get<int>(),
             Complex{p.at(0).get<double>(), p.at(1).get<double>()});
}

}  // namespace

nlohmann::json to_json(const SubSum& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f) {
    terms.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                     {"sym", symbol_json(t.sym)}});
  }
  return {{"terms", terms}};
}

nlohmann::json to_json(const PairSum& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f) {
    terms.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                     {"a", symbol_json(t.sym.a)},
                     {"b", symbol_json(t.sym.b)}});
  }
  return {{"terms", terms}};
}

SubSum sub_sum_from_json(const nlohmann::json& j) {
  SubSum out;
  for (const auto& t : j.at("terms")) {
    auto c = t.at("coeff");
    out.push_back(SubTerm{Complex{c.at(0).get<double>(), c.at(1).get<double>()},
                          symbol_from_json(t.at("sym"))});
  }
  return out;
}

PairSum pair_sum_from_json(const nlohmann::json& j) {
  PairSum out;
  for (const auto& t : j.at("terms")) {
    auto c = t.at("coeff");
    out.push_back(PairTerm{Complex{c.at(0).get<double>(), c.at(1).get<double>()},
                           PairSymbol{symbol_from_json(t.at("a")),
                                      symbol_from_json(t.at("b"))}});
  }
  return out;
}

}  // namespace ctxphase::freevec
