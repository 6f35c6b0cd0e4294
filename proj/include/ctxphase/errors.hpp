#pragma once

#include <stdexcept>
#include <string>

namespace ctxphase {

// A formal sum whose image under the quotient (or identification) map is the
// zero vector: the sum lies in the relation subspace, or the projected local
// superposition interferes destructively.
struct DegenerateSumError : std::domain_error {
  explicit DegenerateSumError(const std::string& what) : std::domain_error(what) {}
};

// Malformed or incomplete wire message.
struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// Joined station records disagree on shared fields (pair id, class).
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ctxphase
