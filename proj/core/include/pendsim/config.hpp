#pragma once

#include <iosfwd>
#include <string>

#include "pendsim/sim.hpp"

namespace pendsim::io {

/// Parses a scenario file: line-oriented `dotted.key = value` pairs with
/// `#` comments, vectors as whitespace-separated numbers. An empty file
/// yields the nominal case-A scenario. Unknown keys are rejected with a
/// ParseError carrying the line number; semantic violations raise
/// ValidationError. The full schema is documented in the README.
sim::ScenarioConfig parse_scenario(std::istream& in);
sim::ScenarioConfig parse_scenario_file(const std::string& path);

}  // namespace pendsim::io
