#include "binotrack/simulator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace binotrack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fraction of the goal baseline below which the vehicle pair counts as
// collapsed.
constexpr double kCoincidenceTol = 1e-12;

// Largest stable gain-step product admitted by validation.
constexpr double kGainStepLimit = 0.1;

void require_finite(Vec2 v, const char* field) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
        throw std::invalid_argument(std::string(field) + " must be finite");
    }
}

struct Derivative {
    Vec2 u_l, u_r, w_t;
};

Derivative derivative(const SimState& state, double t,
                      const FormationGoal& goal, const Gains& gains,
                      const TargetTrajectory& traj) {
    BinocularFrame frame{state.p_l, state.p_r};
    double c = 0.5 * norm(state.p_r - state.p_l);
    if (c < kCoincidenceTol * goal.c_star) {
        throw SimulationAbort(t, "vehicle pair collapsed at t="
                                     + std::to_string(t));
    }
    ControlOutput u = vehicle_commands(frame, measure(state), goal, gains);
    return {u.u_l, u.u_r, target_velocity(traj, t, state.p_t)};
}

SimState advance(const SimState& s, double dt, const Derivative& d) {
    return {s.t + dt, s.p_l + dt * d.u_l, s.p_r + dt * d.u_r,
            s.p_t + dt * d.w_t};
}

}  // namespace

Vec2 target_velocity(const TargetTrajectory& traj, double t, Vec2 p_t) {
    switch (traj.kind) {
        case TrajectoryKind::Stationary:
            return {0.0, 0.0};
        case TrajectoryKind::Circular: {
            Vec2 radial = p_t - traj.center;
            double r = norm(radial);
            if (!(r > 0.0)) return {0.0, 0.0};
            // Counterclockwise for positive speed.
            return (traj.speed / r) * perp(radial);
        }
        case TrajectoryKind::Waypoints: {
            // Arc-length schedule referenced to t = 0: the segment the
            // target should be traversing at time t fixes the heading.
            // Position is integrated, so the initial target position
            // should be the first waypoint for a literal path.
            if (traj.waypoints.size() < 2 || !(traj.speed > 0.0)) {
                return {0.0, 0.0};
            }
            double s = traj.speed * t;
            if (s < 0.0) return {0.0, 0.0};
            for (std::size_t i = 0; i + 1 < traj.waypoints.size(); ++i) {
                Vec2 seg = traj.waypoints[i + 1] - traj.waypoints[i];
                double len = norm(seg);
                if (s < len) {
                    return (traj.speed / len) * seg;
                }
                s -= len;
            }
            return {0.0, 0.0};  // past the last waypoint: at rest
        }
    }
    return {0.0, 0.0};
}

Measurements measure(const SimState& state) {
    BinocularFrame frame{state.p_l, state.p_r};
    Vec2 local = global_to_local(frame, state.p_t);
    return {norm(state.p_r - state.p_l),
            norm(state.p_t - state.p_l),
            norm(state.p_t - state.p_r),
            local.y >= 0.0 ? SideIndicator::Upper : SideIndicator::Lower};
}

TraceRecord observe(const SimState& state, const FormationGoal& goal,
                    const Gains& gains) {
    BinocularFrame frame{state.p_l, state.p_r};
    Measurements meas = measure(state);
    double c = 0.5 * meas.d12;
    EllipticCoord coord = distances_to_elliptic(meas.d1t, meas.d2t, c,
                                                meas.side);
    TrackingError e = tracking_error(frame, coord, goal);
    ControlComponents comps = control_components(meas, goal, gains);
    TraceRecord rec;
    rec.t = state.t;
    rec.p_l = state.p_l;
    rec.p_r = state.p_r;
    rec.p_t = state.p_t;
    rec.e1 = e.e1;
    rec.e2 = e.e2;
    rec.e3 = e.e3;
    rec.V = lyapunov(e);
    rec.v_c = comps.v_c;
    rec.v_eta = comps.v_eta;
    rec.v_xi = comps.v_xi;
    rec.c = c;
    return rec;
}

SimState step(const SimState& state, const FormationGoal& goal,
              const Gains& gains, const TargetTrajectory& traj, double dt) {
    double t = state.t;
    Derivative k1 = derivative(state, t, goal, gains, traj);
    Derivative k2 = derivative(advance(state, 0.5 * dt, k1), t + 0.5 * dt,
                               goal, gains, traj);
    Derivative k3 = derivative(advance(state, 0.5 * dt, k2), t + 0.5 * dt,
                               goal, gains, traj);
    Derivative k4 = derivative(advance(state, dt, k3), t + dt, goal, gains,
                               traj);
    double w = dt / 6.0;
    return {t + dt,
            state.p_l + w * (k1.u_l + 2.0 * k2.u_l + 2.0 * k3.u_l + k4.u_l),
            state.p_r + w * (k1.u_r + 2.0 * k2.u_r + 2.0 * k3.u_r + k4.u_r),
            state.p_t + w * (k1.w_t + 2.0 * k2.w_t + 2.0 * k3.w_t + k4.w_t)};
}

void validate(const Scenario& sc) {
    require_finite(sc.initial.p_l, "initial.p_l");
    require_finite(sc.initial.p_r, "initial.p_r");
    require_finite(sc.initial.p_t, "initial.p_t");
    if (!std::isfinite(sc.initial.t)) {
        throw std::invalid_argument("initial.t must be finite");
    }
    if (!(norm(sc.initial.p_r - sc.initial.p_l) > 0.0)) {
        throw std::invalid_argument("initial vehicle positions coincide");
    }
    if (!(sc.goal.c_star > 0.0) || !std::isfinite(sc.goal.c_star)) {
        throw std::invalid_argument("goal.c_star must be positive");
    }
    if (!(sc.goal.xi_star >= 0.0) || !std::isfinite(sc.goal.xi_star)) {
        throw std::invalid_argument("goal.xi_star must be nonnegative");
    }
    if (!(sc.goal.eta_star >= 0.0) || !(sc.goal.eta_star < kTwoPi)) {
        throw std::invalid_argument("goal.eta_star must lie in [0, 2*pi)");
    }
    double kmax = 0.0;
    for (double k : {sc.gains.kappa_c, sc.gains.kappa_eta,
                     sc.gains.kappa_xi}) {
        if (!(k > 0.0) || !std::isfinite(k)) {
            throw std::invalid_argument("gains must be positive");
        }
        kmax = std::max(kmax, k);
    }
    if (!(sc.dt > 0.0) || !std::isfinite(sc.dt)) {
        throw std::invalid_argument("dt must be positive");
    }
    if (!std::isfinite(sc.t_end) || sc.t_end < sc.initial.t) {
        throw std::invalid_argument("t_end must be at or after initial.t");
    }
    if (sc.t_end > sc.initial.t && sc.dt > sc.t_end - sc.initial.t) {
        throw std::invalid_argument("dt exceeds the run duration");
    }
    if (kmax * sc.dt >= kGainStepLimit) {
        throw std::invalid_argument(
            "dt too coarse for the gains (require max gain * dt < 0.1)");
    }
    if (sc.decimate < 1) {
        throw std::invalid_argument("decimate must be at least 1");
    }
    switch (sc.trajectory.kind) {
        case TrajectoryKind::Stationary:
            break;
        case TrajectoryKind::Circular:
            require_finite(sc.trajectory.center, "trajectory.center");
            if (!(sc.trajectory.radius > 0.0)
                || !std::isfinite(sc.trajectory.radius)) {
                throw std::invalid_argument(
                    "trajectory.radius must be positive");
            }
            if (!std::isfinite(sc.trajectory.speed)) {
                throw std::invalid_argument(
                    "trajectory.speed must be finite");
            }
            break;
        case TrajectoryKind::Waypoints: {
            const auto& w = sc.trajectory.waypoints;
            if (w.size() < 2) {
                throw std::invalid_argument(
                    "trajectory.points needs at least two waypoints");
            }
            for (std::size_t i = 0; i < w.size(); ++i) {
                require_finite(w[i], "trajectory.points");
                if (i > 0 && !(norm(w[i] - w[i - 1]) > 0.0)) {
                    throw std::invalid_argument(
                        "trajectory.points must be pairwise distinct "
                        "segment endpoints");
                }
            }
            if (!(sc.trajectory.speed > 0.0)
                || !std::isfinite(sc.trajectory.speed)) {
                throw std::invalid_argument(
                    "trajectory.speed must be positive");
            }
            break;
        }
    }
}

Trace run(const Scenario& scenario) {
    validate(scenario);
    double t0 = scenario.initial.t;
    long long nsteps = scenario.t_end > t0
        ? std::llround((scenario.t_end - t0) / scenario.dt)
        : 0;
    Trace trace;
    trace.reserve(static_cast<std::size_t>(nsteps) + 1);
    SimState state = scenario.initial;
    state.t = t0;
    trace.push_back(observe(state, scenario.goal, scenario.gains));
    for (long long i = 1; i <= nsteps; ++i) {
        state = step(state, scenario.goal, scenario.gains,
                     scenario.trajectory, scenario.dt);
        state.t = t0 + static_cast<double>(i) * scenario.dt;
        trace.push_back(observe(state, scenario.goal, scenario.gains));
    }
    return trace;
}

}  // namespace binotrack
