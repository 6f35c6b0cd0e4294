#pragma once

// Deterministic fixture records for every tabulated lift (4 kinds x 2
// classes x 2 presentation frames) plus the searched Y-measurement lifts:
// the formal sum, its local phases, the quotient overlap with the target
// state, and the collapsed local pair. The same content backs
// data/lift_fixtures.json, the `fixtures` CLI command, and the tests that
// pin the class table.

#include <json.hpp>

#include <string>

namespace ctxphase::fixtures {

nlohmann::json lift_fixtures();

// lift_fixtures() serialized with a stable 2-space indent and trailing
// newline, byte-comparable against the checked-in data file.
std::string lift_fixtures_text();

}  // namespace ctxphase::fixtures
