#include "binotrack/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace binotrack {

namespace {

constexpr double kAxisTol = 1e-9;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw std::domain_error(std::string(what) + " must be positive");
    }
}

struct ConfocalScalars {
    double B = 0.0;
    double G1 = 0.0;  // sqrt(B^2 + 4 c^2 y^2)
    double p = 0.0;
    double q = 0.0;
    double sp = 0.0;  // sqrt(p - p^2)
    double sq = 0.0;  // sqrt(q^2 - q)
};

ConfocalScalars confocal_scalars(Vec2 pt, double c) {
    ConfocalScalars s;
    s.B = norm_sq(pt) - c * c;
    s.G1 = std::hypot(s.B, 2.0 * c * pt.y);
    PQPair pq = compute_pq(pt, c);
    s.p = pq.p;
    s.q = pq.q;
    s.sp = std::sqrt(std::max(s.p - s.p * s.p, 0.0));
    s.sq = std::sqrt(std::max(s.q * s.q - s.q, 0.0));
    return s;
}

bool on_axis(Vec2 pt, double c) {
    return std::abs(pt.x * pt.y) <= kAxisTol * c * c;
}

}  // namespace

TrackingError tracking_error(const BinocularFrame& frame,
                             const EllipticCoord& target,
                             const FormationGoal& goal) {
    double c = half_focal_distance(frame);
    return {2.0 * (c * c - goal.c_star * goal.c_star),
            target.eta - goal.eta_star,
            target.xi - goal.xi_star};
}

double lyapunov(const TrackingError& e) {
    return 0.5 * (e.e1 * e.e1 + e.e2 * e.e2 + e.e3 * e.e3);
}

RateFunctions rate_functions(Vec2 local_target, double c, double c_star,
                             const Gains& gains) {
    require_positive(c, "half focal distance");
    require_positive(c_star, "goal baseline");
    RateFunctions out;
    out.F1 = 2.0 * c * gains.kappa_c / (c + c_star);
    if (on_axis(local_target, c)) {
        out.degenerate = true;
        return out;
    }
    double g = norm_sq(local_target) / (c * c);
    double B = norm_sq(local_target) - c * c;
    double h = std::hypot(B, 2.0 * c * local_target.y) / (c * c);
    // Radicand 1 + (g/h)^2 + 2 g/h - 1/h^2 collected over h^2; the
    // grouped form ((g+h)^2 - 1) avoids the cancellation of the spread
    // terms near the focal segment, where the rate vanishes.
    double radicand = std::max((g + h) * (g + h) - 1.0, 0.0);
    out.F2 = gains.kappa_eta / (2.0 * c) * std::sqrt(radicand) / h;
    out.F3 = gains.kappa_xi / (c * c * c * std::sqrt(h));
    return out;
}

ErrorRates error_dynamics_rhs(Vec2 local_target, double c, double c_star,
                              const Gains& gains, const TrackingError& e) {
    require_positive(c, "half focal distance");
    ErrorRates out;
    RateFunctions rf = rate_functions(local_target, c, c_star, gains);
    out.de1 = -rf.F1 * e.e1;
    if (on_axis(local_target, c)) {
        out.degenerate = true;
        return out;
    }
    ConfocalScalars s = confocal_scalars(local_target, c);
    double x = local_target.x, y = local_target.y;
    double xy = x * y;
    double G2 = 1.0 / (2.0 * c * c * s.sp);
    double G3 = 1.0 / (2.0 * c * c * s.sq);
    // G_phi = sqrt(x^2 sin^4 eta + y^2 cos^4 eta) with sin^2 eta = p.
    double g_phi = std::hypot(x * s.p, y * (1.0 - s.p));
    double F2_direct = 2.0 * c * gains.kappa_eta * std::abs(xy) * G2 / s.G1;
    double F3_direct = 2.0 * std::abs(xy) * gains.kappa_xi * G3 / g_phi;
    double coupling = 2.0 * c * xy * gains.kappa_eta * G3 / s.G1;
    out.de2 = -F2_direct * e.e2;
    out.de3 = -F3_direct * e.e3 - coupling * e.e2;
    return out;
}

BoundConstants bound_constants(double e1_init, double c, double c_star,
                               double mu, double nu, const Gains& gains) {
    require_positive(c, "half focal distance");
    require_positive(c_star, "goal baseline");
    require_positive(gains.kappa_c, "kappa_c");
    require_positive(gains.kappa_eta, "kappa_eta");
    require_positive(gains.kappa_xi, "kappa_xi");
    if (!(mu > 0.0 && mu < c)) {
        throw std::domain_error("mu must lie in (0, c)");
    }
    if (!(nu > c)) {
        throw std::domain_error("nu must exceed c");
    }
    double c0_sq = 0.5 * e1_init + c_star * c_star;
    if (!(c0_sq > 0.0)) {
        throw std::domain_error("e1_init inconsistent with a real baseline");
    }
    double c0 = std::sqrt(c0_sq);
    BoundConstants out;
    // The scaling channel's rate is monotone in the baseline, so its
    // minimum over a run sits at one of the endpoints c0, c_star.
    out.k1 = 2.0 * std::min(2.0 * gains.kappa_c * c0 / (c0 + c_star),
                            gains.kappa_c);
    out.k2 = gains.kappa_eta / c * std::sqrt(mu * mu / (mu * mu + c * c));
    out.k3 = gains.kappa_xi / (c * c * std::sqrt(nu * nu + c * c));
    out.k4 = 2.0 * std::min({out.k1, out.k2, out.k3});
    return out;
}

double perturbation_bound(Vec2 local_target, double c, double eps) {
    require_positive(c, "half focal distance");
    double B = norm_sq(local_target) - c * c;
    double h = std::hypot(B, 2.0 * c * local_target.y) / (c * c);
    return eps / (c * std::sqrt(h));
}

DriftTerms drift_terms(Vec2 local_target, double c,
                       Vec2 target_velocity_local) {
    require_positive(c, "half focal distance");
    DriftTerms out;
    if (on_axis(local_target, c)) {
        out.degenerate = true;
        return out;
    }
    ConfocalScalars s = confocal_scalars(local_target, c);
    double x = local_target.x, y = local_target.y;
    double wx = target_velocity_local.x, wy = target_velocity_local.y;
    // Gradient components written through the quadratic roots:
    // B/G1 - 1 = -2 c^2 p / G1, (B + 2c^2)/G1 - 1 = 2 c^2 (1-p) / G1,
    // 1 + B/G1 = -2 c^2 q / G1, 1 + (B + 2c^2)/G1 = 2 c^2 (1-q) / G1.
    out.g_eta = sign_pm(x * y)
                * (-s.p * x * wx + (1.0 - s.p) * y * wy) / (s.sp * s.G1);
    out.g_xi = (-s.q * x * wx + (1.0 - s.q) * y * wy) / (s.sq * s.G1);
    return out;
}

}  // namespace binotrack
