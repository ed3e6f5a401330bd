#pragma once

#include "binotrack/controller.hpp"
#include "binotrack/geometry.hpp"

namespace binotrack {

// Error coordinates of the closed loop: e1 tracks the squared baseline
// mismatch, e2 and e3 the raw angular and radial coordinate mismatches.
// e2 deliberately takes the plain difference eta - eta_star with no
// wrap-around shortcut; goals should be authored on the same branch as
// the initial condition.
struct TrackingError {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
};

TrackingError tracking_error(const BinocularFrame& frame,
                             const EllipticCoord& target,
                             const FormationGoal& goal);

// V = (e1^2 + e2^2 + e3^2) / 2.
double lyapunov(const TrackingError& e);

// Instantaneous decay rates of the three error channels at the given
// relative configuration. F2 uses the closed form in the normalized
// radii g = (x^2+y^2)/c^2 and h = G1/c^2 (identical to the direct
// |xy|-product form away from the axes); F3 uses the kappa_xi/(c^3
// sqrt(h)) form carried through the source analysis verbatim, which
// differs from the direct translation-channel rate by a factor c^2.
// On the degenerate set (target on an axis) F2 and F3 are reported as 0
// with the flag set; F1 is always valid.
struct RateFunctions {
    double F1 = 0.0;
    double F2 = 0.0;
    double F3 = 0.0;
    bool degenerate = false;
};

RateFunctions rate_functions(Vec2 local_target, double c, double c_star,
                             const Gains& gains);

// Closed-form right-hand side of the error dynamics at a state, using
// the direct channel rates (the |xy|-product forms): de1 = -F1 e1,
// de2 = -F2 e2, de3 = -F3_direct e3 + (rotation coupling) e2. Valid for
// a stationary target with the scaling channel at rest; the scaling
// channel shifts (xi, eta) of a fixed point and is not modeled here.
struct ErrorRates {
    double de1 = 0.0;
    double de2 = 0.0;
    double de3 = 0.0;
    bool degenerate = false;
};

ErrorRates error_dynamics_rhs(Vec2 local_target, double c, double c_star,
                              const Gains& gains, const TrackingError& e);

// Region-conditioned lower bounds on the channel rates. k1 bounds twice
// the F1 rate along any run whose baseline stays between its initial
// and goal values; k2 bounds F2 wherever |y| >= mu; k3 bounds F3
// wherever x^2 + y^2 <= nu^2; k4 = 2 min(k1, k2, k3). Requires
// 0 < mu < c and nu > c.
struct BoundConstants {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double k4 = 0.0;
};

BoundConstants bound_constants(double e1_init, double c, double c_star,
                               double mu, double nu, const Gains& gains);

// Worst-case drift magnitude a target moving at speed eps can induce in
// either the eta or xi error channel: eps / (c sqrt(h)).
double perturbation_bound(Vec2 local_target, double c, double eps);

// Signed drift the given local-frame target velocity induces in the eta
// and xi channels. Degenerate on the axes (flag set, values 0).
struct DriftTerms {
    double g_eta = 0.0;
    double g_xi = 0.0;
    bool degenerate = false;
};

DriftTerms drift_terms(Vec2 local_target, double c, Vec2 target_velocity_local);

}  // namespace binotrack
