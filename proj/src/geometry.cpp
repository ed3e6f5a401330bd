#include "binotrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace binotrack {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative slack admitted on measured distances before declaring them
// inconsistent; within the slack, values are clamped onto the domain.
constexpr double kMeasurementSlack = 1e-9;

void require_positive_c(double c) {
    if (!(c > 0.0)) {
        throw std::domain_error("half focal distance must be positive");
    }
}

}  // namespace

double wrap_angle(double eta) {
    double w = std::fmod(eta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;  // fmod can round up to the period
    return w;
}

SideIndicator side_of_eta(double eta) {
    double w = wrap_angle(eta);
    return w <= kPi ? SideIndicator::Upper : SideIndicator::Lower;
}

double half_focal_distance(const BinocularFrame& frame) {
    double c = 0.5 * norm(frame.p_r - frame.p_l);
    if (!(c > 0.0)) {
        throw std::domain_error("degenerate frame: vehicles coincide");
    }
    return c;
}

Vec2 frame_origin(const BinocularFrame& frame) {
    return 0.5 * (frame.p_l + frame.p_r);
}

Vec2 frame_axis_x(const BinocularFrame& frame) {
    double d = norm(frame.p_r - frame.p_l);
    if (!(d > 0.0)) {
        throw std::domain_error("degenerate frame: vehicles coincide");
    }
    return (1.0 / d) * (frame.p_r - frame.p_l);
}

Vec2 frame_axis_y(const BinocularFrame& frame) {
    return perp(frame_axis_x(frame));
}

Vec2 global_to_local(const BinocularFrame& frame, Vec2 point) {
    Vec2 v = point - frame_origin(frame);
    Vec2 ex = frame_axis_x(frame);
    return {dot(v, ex), dot(v, perp(ex))};
}

Vec2 local_to_global(const BinocularFrame& frame, Vec2 point) {
    Vec2 ex = frame_axis_x(frame);
    return frame_origin(frame) + point.x * ex + point.y * perp(ex);
}

Vec2 elliptic_to_local(const EllipticCoord& coord, double c) {
    require_positive_c(c);
    if (!(coord.xi >= 0.0)) {
        throw std::domain_error("xi must be nonnegative");
    }
    return {c * std::cosh(coord.xi) * std::cos(coord.eta),
            c * std::sinh(coord.xi) * std::sin(coord.eta)};
}

PQPair compute_pq(Vec2 local_point, double c) {
    require_positive_c(c);
    double x = local_point.x, y = local_point.y;
    double B = x * x + y * y - c * c;
    double G1 = std::hypot(B, 2.0 * c * y);
    // p = (-B + G1) / 2c^2 and q = (-B - G1) / 2c^2. One of the two
    // suffers cancellation depending on the sign of B; rewrite that root
    // through the product identity p*q = -y^2/c^2.
    double p, q;
    double two_c2 = 2.0 * c * c;
    if (B >= 0.0) {
        q = (-B - G1) / two_c2;
        double denom = G1 + B;
        p = denom > 0.0 ? 2.0 * y * y / denom : 0.0;  // denom==0 only at a focus
    } else {
        p = (-B + G1) / two_c2;
        double denom = G1 - B;
        q = -(2.0 * y * y) / denom;
    }
    p = std::clamp(p, 0.0, 1.0);
    q = std::min(q, 0.0);
    return {p, q};
}

EllipticCoord local_to_elliptic(Vec2 local_point, double c) {
    PQPair pq = compute_pq(local_point, c);
    double x = local_point.x, y = local_point.y;
    // eta0 = asin(sqrt(p)), but with the complement leg computed through
    // its own cancellation-free quotient (1 - p)(1 - q) = x^2 / c^2, so
    // the angle keeps full precision next to both axes.
    double B = x * x + y * y - c * c;
    double G1 = std::hypot(B, 2.0 * c * y);
    double one_minus_p = 2.0 * x * x / (B + 2.0 * c * c + G1);
    double eta0 = std::atan2(std::sqrt(pq.p), std::sqrt(one_minus_p));
    // Quadrant of the local point picks the eta branch.
    double eta;
    if (y >= 0.0) {
        eta = x >= 0.0 ? eta0 : kPi - eta0;
    } else {
        eta = x <= 0.0 ? kPi + eta0 : kTwoPi - eta0;
    }
    double q = pq.q;
    double xi =
        0.5 * std::log1p(2.0 * (std::sqrt(q * q - q) - q));
    if (!(xi > 0.0)) xi = 0.0;  // rounding can produce -0.0
    return {xi, wrap_angle(eta)};
}

EllipticCoord distances_to_elliptic(double d1t, double d2t, double c,
                                    SideIndicator side) {
    require_positive_c(c);
    if (!(d1t >= 0.0) || !(d2t >= 0.0)) {
        throw std::domain_error("distances must be nonnegative");
    }
    double baseline = 2.0 * c;
    double slack = kMeasurementSlack * std::max(baseline, d1t + d2t);
    if (d1t + d2t < baseline - slack) {
        throw InconsistentMeasurement(
            "range sum below the vehicle baseline");
    }
    if (std::abs(d1t - d2t) > baseline + slack) {
        throw InconsistentMeasurement(
            "range difference exceeds the vehicle baseline");
    }
    double cos_eta = std::clamp((d1t - d2t) / baseline, -1.0, 1.0);
    double eta = std::acos(cos_eta);
    if (side == SideIndicator::Lower) {
        eta = kTwoPi - eta;
    }
    double cosh_xi = std::max((d1t + d2t) / baseline, 1.0);
    double xi = std::acosh(cosh_xi);
    return {xi, wrap_angle(eta)};
}

}  // namespace binotrack
