#pragma once

#include <cmath>
#include <utility>

#include "bisectrix/error.hpp"

namespace bisectrix {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

/// Carrier line through two distinct points.
struct Line2 {
    Point2 p;
    Point2 q;

    Line2(Point2 p_, Point2 q_) : p(p_), q(q_) {
        if (dist(p, q) <= 0.0)
            fail(ErrorCode::CoincidentPoints, "Line2 requires two distinct points");
    }

    Point2 direction() const { return q - p; }
};

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-12;
};

/// Planar isometry: p -> R(rotation) * (reflection ? flip_y(p) : p) + translation.
struct RigidMap {
    double rotation = 0.0;
    Point2 translation{0.0, 0.0};
    bool reflection = false;

    Point2 apply(Point2 p) const;
    Point2 apply_inverse(Point2 p) const;
};

Point2 intersect_lines(const Line2& l1, const Line2& l2, const Tolerance& tol = {});

Point2 perp_foot(Point2 p, const Line2& l);

/// Foot of the internal angle bisector from vertex c on segment de.
Point2 angle_bisector_foot(Point2 c, Point2 d, Point2 e);

/// Circumradius and unsigned area of a non-degenerate triangle.
std::pair<double, double> circum_area(Point2 a, Point2 b, Point2 c);

double triangle_area(Point2 a, Point2 b, Point2 c);

bool collinear(Point2 a, Point2 b, Point2 c);

// Forward declaration; the canonical scene type lives with the dual solver.
struct SceneDual;

/// Rigid motion bringing an arbitrary scene into the frame where the fixed
/// line is y=0, both points lie above it, a < c and b >= d.
std::pair<SceneDual, RigidMap> canonicalize(Point2 pA, Point2 pB, const Line2& l,
                                            Point2 side_witness);

}  // namespace bisectrix
