#include "binotrack/scenarios.hpp"

#include <stdexcept>

namespace binotrack {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

Scenario base_scenario() {
    Scenario sc;
    sc.initial.p_l = {-10.0, 5.0};
    sc.initial.p_r = {10.0, 5.0};
    sc.goal.xi_star = 1.2;
    sc.goal.eta_star = kHalfPi;
    sc.gains = {0.1, 1.0, 1.0};
    sc.dt = 0.01;
    sc.decimate = 10;
    return sc;
}

Scenario stationary_case(Vec2 target) {
    Scenario sc = base_scenario();
    sc.initial.p_t = target;
    sc.goal.c_star = 40.0;
    sc.trajectory.kind = TrajectoryKind::Stationary;
    sc.t_end = 300.0;
    return sc;
}

std::vector<NamedScenario> make_builtins() {
    std::vector<NamedScenario> out;
    out.push_back({"fig3a", stationary_case({20.0, 80.0})});
    out.push_back({"fig3b", stationary_case({30.0, -60.0})});
    out.push_back({"fig3c", stationary_case({0.0, 5.0})});
    out.push_back({"fig3d", stationary_case({25.0, 5.0})});

    Scenario circling = base_scenario();
    circling.initial.p_t = {100.0, 50.0};
    circling.goal.c_star = 20.0;
    circling.trajectory.kind = TrajectoryKind::Circular;
    circling.trajectory.center = {100.0, 100.0};
    circling.trajectory.radius = 50.0;
    circling.trajectory.speed = 5.0;
    circling.t_end = 400.0;
    out.push_back({"fig4", circling});

    Scenario course = base_scenario();
    course.initial.p_t = {100.0, 50.0};
    course.goal.c_star = 20.0;
    course.trajectory.kind = TrajectoryKind::Waypoints;
    course.trajectory.waypoints = {{100.0, 50.0},
                                   {160.0, 110.0},
                                   {100.0, 170.0},
                                   {160.0, 230.0},
                                   {100.0, 290.0}};
    course.trajectory.speed = 5.0;
    course.t_end = 150.0;
    out.push_back({"fig5", course});
    return out;
}

}  // namespace

const std::vector<NamedScenario>& builtin_scenarios() {
    static const std::vector<NamedScenario> scenarios = make_builtins();
    return scenarios;
}

const Scenario& builtin_scenario(const std::string& name) {
    for (const NamedScenario& ns : builtin_scenarios()) {
        if (ns.name == name) return ns.scenario;
    }
    throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

}  // namespace binotrack
