#pragma once

#include <string>
#include <vector>

#include "binotrack/simulator.hpp"

namespace binotrack {

// Built-in scenario corpus: the four stationary-target cases (upper
// side, lower side, target at the vehicle midpoint, target on the focal
// axis beyond a focus), the circling target, and the sharp-turn
// waypoint course. The same definitions ship as files under scenarios/.
struct NamedScenario {
    std::string name;
    Scenario scenario;
};

const std::vector<NamedScenario>& builtin_scenarios();

// Lookup by name; throws std::invalid_argument for unknown names.
const Scenario& builtin_scenario(const std::string& name);

}  // namespace binotrack
