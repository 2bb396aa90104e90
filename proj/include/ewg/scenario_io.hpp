#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ewg/scenario.hpp"

namespace ewg {

struct ScenarioParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text format: [horizon]/[water]/[gas]/[power] key = value sections plus a
// [loads] section holding one `t,L_w,L_g,L_r` CSV row per timestep.
Scenario scenario_from_stream(std::istream& in, const std::string& origin = "<stream>");
Scenario scenario_from_file(const std::string& path);

void write_scenario(const Scenario& s, std::ostream& out);
std::string scenario_to_string(const Scenario& s);

}  // namespace ewg
