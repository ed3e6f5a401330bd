#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "binotrack/analysis.hpp"
#include "binotrack/controller.hpp"
#include "binotrack/geometry.hpp"

namespace binotrack {

struct SimState {
    double t = 0.0;
    Vec2 p_l;
    Vec2 p_r;
    Vec2 p_t;
};

enum class TrajectoryKind { Stationary, Circular, Waypoints };

// Target motion law. Circular: constant speed around a fixed center,
// counterclockwise for positive speed. Waypoints: constant speed along
// the polyline, segments switched on the time-based arc-length schedule,
// at rest after the last waypoint; the initial target position should be
// the first waypoint for the path to be followed literally.
struct TargetTrajectory {
    TrajectoryKind kind = TrajectoryKind::Stationary;
    Vec2 center;                  // Circular
    double radius = 0.0;          // Circular
    double speed = 0.0;           // Circular / Waypoints
    std::vector<Vec2> waypoints;  // Waypoints
};

Vec2 target_velocity(const TargetTrajectory& traj, double t, Vec2 p_t);

struct Scenario {
    SimState initial;
    FormationGoal goal;
    Gains gains;
    TargetTrajectory trajectory;
    double dt = 0.01;
    double t_end = 0.0;
    int decimate = 10;  // output decimation applied by the CLI writers
    unsigned long long seed = 0;  // reserved; dynamics are noiseless
};

// Validates ranges and cross-field constraints; throws
// std::invalid_argument naming the offending field.
void validate(const Scenario& scenario);

// One sampled state with the derived diagnostics the trace carries.
struct TraceRecord {
    double t = 0.0;
    Vec2 p_l, p_r, p_t;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    double V = 0.0;
    double v_c = 0.0, v_eta = 0.0, v_xi = 0.0;
    double c = 0.0;
};

using Trace = std::vector<TraceRecord>;

// Raised when the vehicle pair collapses (c under 1e-12 of the goal
// baseline) and the frame is about to lose meaning.
struct SimulationAbort : std::runtime_error {
    double t;
    explicit SimulationAbort(double when, const std::string& what)
        : std::runtime_error(what), t(when) {}
};

// Synthesizes the controller's sensor view from ground truth. The only
// place true target positions are read; ties on the baseline classify
// as Upper.
Measurements measure(const SimState& state);

// Diagnostics of a state as recorded in the trace.
TraceRecord observe(const SimState& state, const FormationGoal& goal,
                    const Gains& gains);

// One classical fourth-order step of the coupled vehicle/target system.
// The controller is re-evaluated from synthesized measurements at every
// integrator stage.
SimState step(const SimState& state, const FormationGoal& goal,
              const Gains& gains, const TargetTrajectory& traj, double dt);

// Fixed-step integration from t0 to t_end (rounded to whole steps),
// recording every step. Aborts propagate with the offending time.
Trace run(const Scenario& scenario);

}  // namespace binotrack
