#pragma once

#include <cmath>
#include <stdexcept>

namespace binotrack {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
// Counterclockwise quarter turn.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

// sign convention used throughout: sign(0) == +1.
inline double sign_pm(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Two vehicles induce a confocal coordinate system: the vehicles are the
// foci, the local frame sits at the midpoint with +x pointing from the
// left vehicle to the right one, +y the counterclockwise normal.
struct BinocularFrame {
    Vec2 p_l;  // left vehicle / left focus, local (-c, 0)
    Vec2 p_r;  // right vehicle / right focus, local (+c, 0)
};

// Half the focal distance. Throws std::domain_error if the vehicles
// coincide (the frame loses its axis).
double half_focal_distance(const BinocularFrame& frame);

Vec2 frame_origin(const BinocularFrame& frame);
Vec2 frame_axis_x(const BinocularFrame& frame);
Vec2 frame_axis_y(const BinocularFrame& frame);

Vec2 global_to_local(const BinocularFrame& frame, Vec2 point);
Vec2 local_to_global(const BinocularFrame& frame, Vec2 point);

// Confocal elliptic coordinates. xi >= 0 indexes the ellipse through the
// point, eta in [0, 2*pi) the hyperbola branch. The upper half plane
// (local y >= 0) carries eta in [0, pi], the lower half (pi, 2*pi).
struct EllipticCoord {
    double xi = 0.0;
    double eta = 0.0;
};

enum class SideIndicator { Upper, Lower };

// Which half plane an eta value addresses. Boundary values (0, pi)
// classify as Upper.
SideIndicator side_of_eta(double eta);

// Intermediate quadratic pair: p = sin^2(eta), q = -sinh^2(xi). Both are
// roots of c^2 z^2 + B z - y^2 with B = x^2 + y^2 - c^2, so p >= 0 >= q
// always; results are clamped to p in [0, 1], q <= 0 against rounding
// overshoot.
struct PQPair {
    double p = 0.0;
    double q = 0.0;
};

// Forward map: (xi, eta) on the ellipse family with half focal distance c
// to local Cartesian coordinates.
Vec2 elliptic_to_local(const EllipticCoord& coord, double c);

PQPair compute_pq(Vec2 local_point, double c);

// Inverse map via the quadratic pair; eta is picked by the sign quadrant
// of the local point, xi from the logarithmic closed form. Exact inverse
// of elliptic_to_local away from the axes; axis points land on the
// degenerate coordinates (xi = 0 between the foci, eta in {0, pi/2, pi,
// 3*pi/2} on the axes).
EllipticCoord local_to_elliptic(Vec2 local_point, double c);

// Raised when measured distances cannot come from any target position
// for the given baseline (triangle violations beyond rounding slack).
struct InconsistentMeasurement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Range-only inverse: d1t from the left vehicle, d2t from the right one.
// The side bit resolves the reflection ambiguity of pure distances.
// Arguments are admitted with relative slack 1e-9 before the pair is
// declared inconsistent; within the slack they are clamped onto the
// valid domain.
EllipticCoord distances_to_elliptic(double d1t, double d2t, double c,
                                    SideIndicator side);

// eta reduced into [0, 2*pi).
double wrap_angle(double eta);

}  // namespace binotrack
