#pragma once

#include "binotrack/geometry.hpp"

namespace binotrack {

// Active 2D rotation.
struct Rot2 {
    double c = 1.0;
    double s = 0.0;
};

Rot2 rotation(double angle);
inline Vec2 apply(Rot2 r, Vec2 v) {
    return {r.c * v.x - r.s * v.y, r.s * v.x + r.c * v.y};
}

// Proportional gains of the three control channels. All must be positive.
struct Gains {
    double kappa_c = 0.0;    // baseline scaling
    double kappa_eta = 0.0;  // formation rotation
    double kappa_xi = 0.0;   // formation translation
};

// Desired relative configuration: target at (xi_star, eta_star) in the
// vehicle-induced coordinates, with half focal distance c_star.
struct FormationGoal {
    double xi_star = 0.0;
    double eta_star = 0.0;  // stored in [0, 2*pi)
    double c_star = 0.0;
};

// Everything the vehicle pair can sense: its own baseline length and the
// two ranges to the target, plus which side of the baseline the target
// is on. The controller never sees target positions.
struct Measurements {
    double d12 = 0.0;  // inter-vehicle distance
    double d1t = 0.0;  // left vehicle to target
    double d2t = 0.0;  // right vehicle to target
    SideIndicator side = SideIndicator::Upper;
};

// Channel speeds: scaling, rotation, translation.
struct ControlComponents {
    double v_c = 0.0;
    double v_eta = 0.0;
    double v_xi = 0.0;
};

// Global-frame velocity commands for the two vehicles.
struct ControlOutput {
    Vec2 u_l;
    Vec2 u_r;
};

// Proportional channel laws evaluated from measurements alone.
// Exactly zero when the measured configuration equals the goal.
ControlComponents control_components(const Measurements& meas,
                                     const FormationGoal& goal,
                                     const Gains& gains);

// Unit direction (local frame) for the translation channel: the tangent
// of the constant-eta hyperbola through the target, oriented so that a
// positive v_xi grows xi. On the degenerate set (target on a coordinate
// axis) the tangent is ambiguous; the fallback pushes the target toward
// the goal side of the baseline, or along the focal axis when the target
// sits beyond a focus. goal_side breaks the tie.
Vec2 translation_direction(Vec2 local_target, double eta, double c,
                           SideIndicator goal_side);

// Assembles per-vehicle velocities from the channel speeds: translation
// moves both vehicles along d_hat, rotation moves them along opposite
// baseline normals, scaling along the baseline itself. d_hat_local is
// the unit translation direction in the local frame.
ControlOutput control_inputs(const BinocularFrame& frame,
                             const ControlComponents& comps,
                             Vec2 d_hat_local);

// Full controller path from measurements to vehicle commands.
ControlOutput vehicle_commands(const BinocularFrame& frame,
                               const Measurements& meas,
                               const FormationGoal& goal,
                               const Gains& gains);

}  // namespace binotrack
