#pragma once

// Formal linear combinations over labeled basis symbols, the quotient map
// onto tensor states, and the identification map onto subsystem kets.
//
// A sum is kept "as written": term order is preserved and repeated symbols
// are not merged, so e0 + e1 and 3 e0 - 2 e0 + e1 stay distinct until
// normal_form (which merges, drops zeros, and sorts) is applied explicitly.

#include "ctxphase/hilbert.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ctxphase::freevec {

// A subsystem basis label: frame, index, and a unit-modulus phase, so the
// signed-ket spellings |-1>, |0'>, i|1''> are all single symbols. Two symbols
// are structurally equal when frame and index match and the phases agree
// within kTightTol; equality never consults the symbol's numeric ket.
struct SubSymbol {
  Frame frame = Frame::Z;
  int index = 0;
  Complex phase{1.0, 0.0};
};

// Validating maker.
SubSymbol sub(Frame frame, int index, Complex phase = Complex{1.0, 0.0});

Ket symbol_ket(const SubSymbol& s);
bool structurally_equal(const SubSymbol& a, const SubSymbol& b);
bool symbol_less(const SubSymbol& a, const SubSymbol& b);

struct PairSymbol {
  SubSymbol a, b;
};

bool structurally_equal(const PairSymbol& a, const PairSymbol& b);
bool symbol_less(const PairSymbol& a, const PairSymbol& b);

template <typename S>
struct Term {
  Complex coeff{1.0, 0.0};
  S sym{};
};

using SubTerm = Term<SubSymbol>;
using PairTerm = Term<PairSymbol>;
using SubSum = std::vector<SubTerm>;
using PairSum = std::vector<PairTerm>;

// Unnormalized images land below this norm only when the sum cancels.
inline constexpr double kDegenerateNorm = 1e-9;

// Moves a unit-modulus coefficient into the chosen side's symbol phase.
// The quotient image is unchanged. Throws std::domain_error when the
// coefficient is not unit modulus.
PairTerm absorb_scalar(const PairTerm& term, Side side);

// Each term contributes coeff * ket(a) (x) ket(b); the sum is normalized at
// the end. A zero image means the sum lies in the relation subspace and
// raises DegenerateSumError.
TensorState quotient_map(const PairSum& f);
TensorState quotient_image_unnormalized(const PairSum& f);

// True iff both sums have the same quotient image up to a global phase
// (both-zero counts as equivalent: the difference is in the relation
// subspace).
bool equivalent_mod_R(const PairSum& f, const PairSum& g, double tol = kPhaseTol);

// Maps each symbol to its ket, sums in the subsystem space, normalizes.
// A zero-norm sum (destructive interference, no definite outcome) raises
// DegenerateSumError.
Ket identify_T(const SubSum& f);
Ket identify_image_unnormalized(const SubSum& f);

// Merges coefficients on structurally equal symbols, drops zero terms, sorts
// by (frame, index, phase argument) -- lexicographic over both slots for
// pair symbols.
template <typename S>
std::vector<Term<S>> normal_form(std::vector<Term<S>> f);

extern template SubSum normal_form(SubSum);
extern template PairSum normal_form(PairSum);

// The two generator families of the relation subspace:
//   left:  r(u,w) + s(v,w) - (ru + sv, w)
//   right: r(u,v) + s(u,w) - (u, rv + sw)
// The composite coordinate ru + sv is emitted as a single symbol with the
// scale carried by the term coefficient when it lies on a basis ray, and
// expanded by linearity otherwise; either way the quotient image is the
// image of the generator, which is the zero vector.
enum class RelationKind { LeftLinearity, RightLinearity };

PairSum relation_generator(RelationKind kind, Complex r, Complex s,
                           const SubSymbol& u, const SubSymbol& v,
                           const SubSymbol& w);

// Text form mirrors signed-ket notation: `(|0'>,|-1'>)`, `3|0> - 2|0> + |1>`.
// Symbol phases print as one of "", "-", "i", "-i" or "e^{i<arg>}"; real
// coefficients print bare, complex ones as "(re+imi)". Parsing the printed
// form recovers the as-written sum (exact coefficients, phases within
// kTightTol). parse_* throw std::invalid_argument on malformed input.
std::string to_text(const SubSymbol& s);
std::string to_text(const PairSymbol& s);
std::string to_text(const SubSum& f);
std::string to_text(const PairSum& f);
SubSum parse_sub_sum(std::string_view text);
PairSum parse_pair_sum(std::string_view text);

// Structured record form; doubles survive bit-exactly.
nlohmann::json to_json(const SubSum& f);
nlohmann::json to_json(const PairSum& f);
SubSum sub_sum_from_json(const nlohmann::json& j);
PairSum pair_sum_from_json(const nlohmann::json& j);

}  // namespace ctxphase::freevec
