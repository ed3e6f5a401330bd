#include "binotrack/controller.hpp"

#include <cmath>

#include "binotrack/geometry.hpp"

namespace binotrack {

namespace {

// Degeneracy threshold for the translation tangent: |x*y| under this
// fraction of c^2 counts as sitting on a coordinate axis.
constexpr double kAxisTol = 1e-9;

}  // namespace

Rot2 rotation(double angle) {
    return {std::cos(angle), std::sin(angle)};
}

ControlComponents control_components(const Measurements& meas,
                                     const FormationGoal& goal,
                                     const Gains& gains) {
    double c = 0.5 * meas.d12;
    if (!(c > 0.0)) {
        throw std::domain_error("degenerate frame: zero baseline");
    }
    EllipticCoord coord = distances_to_elliptic(meas.d1t, meas.d2t, c,
                                                meas.side);
    return {gains.kappa_c * (goal.c_star - c),
            gains.kappa_eta * (goal.eta_star - coord.eta),
            gains.kappa_xi * (goal.xi_star - coord.xi)};
}

Vec2 translation_direction(Vec2 local_target, double eta, double c,
                           SideIndicator goal_side) {
    if (!(c > 0.0)) {
        throw std::domain_error("half focal distance must be positive");
    }
    double x = local_target.x, y = local_target.y;
    if (std::abs(x * y) > kAxisTol * c * c) {
        // Tangent of the constant-eta hyperbola through the target,
        // oriented so that a positive v_xi grows xi: moving the pair
        // along it induces relative target motion of -v_xi * d_hat,
        // radially outward on the hyperbola.
        double s2 = std::sin(eta) * std::sin(eta);
        double c2 = std::cos(eta) * std::cos(eta);
        double gx = y * c2;
        double gy = x * s2;
        double inv = -sign_pm(x * y) / std::hypot(gx, gy);
        return {inv * gx, inv * gy};
    }
    // Degenerate set: the tangent is ambiguous. Use the limit of the
    // formula where one exists, and the goal side where it does not.
    double ax = std::abs(x), ay = std::abs(y);
    if (ay > ax) {
        // Transverse axis: straight away from the target.
        return {0.0, -sign_pm(y)};
    }
    if (ax > c) {
        // Focal axis beyond a focus: along the axis away from the target.
        return {-sign_pm(x), 0.0};
    }
    // Focal segment, focus, or origin: any perpendicular push grows xi;
    // push the target toward the side the goal lives on (the pair moves
    // the opposite way).
    double s_goal = goal_side == SideIndicator::Upper ? 1.0 : -1.0;
    return {0.0, -s_goal};
}

ControlOutput control_inputs(const BinocularFrame& frame,
                             const ControlComponents& comps,
                             Vec2 d_hat_local) {
    Vec2 ex = frame_axis_x(frame);
    Vec2 ey = perp(ex);
    Vec2 u_trans = comps.v_xi * (d_hat_local.x * ex + d_hat_local.y * ey);
    // Rotation moves the vehicles along opposite baseline normals,
    // scaling along the baseline itself; both cancel at the midpoint.
    return {u_trans + comps.v_eta * ey - comps.v_c * ex,
            u_trans - comps.v_eta * ey + comps.v_c * ex};
}

ControlOutput vehicle_commands(const BinocularFrame& frame,
                               const Measurements& meas,
                               const FormationGoal& goal,
                               const Gains& gains) {
    ControlComponents comps = control_components(meas, goal, gains);
    double c = 0.5 * meas.d12;
    EllipticCoord coord = distances_to_elliptic(meas.d1t, meas.d2t, c,
                                                meas.side);
    Vec2 local = elliptic_to_local(coord, c);
    Vec2 d_hat = translation_direction(local, coord.eta, c,
                                       side_of_eta(goal.eta_star));
    return control_inputs(frame, comps, d_hat);
}

}  // namespace binotrack
