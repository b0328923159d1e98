#include "bisectrix/geom.hpp"

#include <algorithm>
#include <cmath>

#include "bisectrix/dual.hpp"

namespace bisectrix {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParallelLines: return "ParallelLines";
        case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorCode::DegenerateApex: return "DegenerateApex";
        case ErrorCode::PointsOnLine: return "PointsOnLine";
        case ErrorCode::OppositeSides: return "OppositeSides";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::VerticalPair: return "VerticalPair";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::LeadingZero: return "LeadingZero";
        case ErrorCode::IsoscelesDegenerate: return "IsoscelesDegenerate";
        case ErrorCode::HypothesisViolation: return "HypothesisViolation";
        case ErrorCode::NoTransversal: return "NoTransversal";
        case ErrorCode::NonGeometricReport: return "NonGeometricReport";
        case ErrorCode::SolverFailure: return "SolverFailure";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

Point2 RigidMap::apply(Point2 p) const {
    if (reflection) p.y = -p.y;
    const double c = std::cos(rotation), s = std::sin(rotation);
    return {c * p.x - s * p.y + translation.x, s * p.x + c * p.y + translation.y};
}

Point2 RigidMap::apply_inverse(Point2 p) const {
    p = p - translation;
    const double c = std::cos(rotation), s = std::sin(rotation);
    Point2 u{c * p.x + s * p.y, -s * p.x + c * p.y};
    if (reflection) u.y = -u.y;
    return u;
}

Point2 intersect_lines(const Line2& l1, const Line2& l2, const Tolerance& tol) {
    (void)tol;
    const Point2 d1 = l1.direction();
    const Point2 d2 = l2.direction();
    const double cr = cross(d1, d2);
    if (std::abs(cr) < 1e-12 * norm(d1) * norm(d2))
        fail(ErrorCode::ParallelLines, "intersect_lines: directions are parallel");
    // l1.p + t*d1 with cross(l2.p + s*d2 - l1.p - t*d1, d2) = 0
    const double t = cross(l2.p - l1.p, d2) / cr;
    return l1.p + t * d1;
}

Point2 perp_foot(Point2 p, const Line2& l) {
    const Point2 d = l.direction();
    const double t = dot(p - l.p, d) / dot(d, d);
    return l.p + t * d;
}

double triangle_area(Point2 a, Point2 b, Point2 c) {
    return 0.5 * std::abs(cross(b - a, c - a));
}

bool collinear(Point2 a, Point2 b, Point2 c) {
    const double longest =
        std::max({dist(a, b), dist(b, c), dist(c, a)});
    return triangle_area(a, b, c) < 1e-14 * longest * longest;
}

Point2 angle_bisector_foot(Point2 c, Point2 d, Point2 e) {
    if (collinear(c, d, e))
        fail(ErrorCode::DegenerateTriangle, "angle_bisector_foot: collinear vertices");
    const double dc = dist(d, c);
    const double ce = dist(c, e);
    return d + (dc / (dc + ce)) * (e - d);
}

std::pair<double, double> circum_area(Point2 a, Point2 b, Point2 c) {
    if (collinear(a, b, c))
        fail(ErrorCode::DegenerateTriangle, "circum_area: collinear vertices");
    const double area = triangle_area(a, b, c);
    const double R = dist(a, b) * dist(b, c) * dist(c, a) / (4.0 * area);
    return {R, area};
}

namespace {

// Affine frame A p + t with A orthogonal; composed numerically, then reduced
// to the rotation/reflection/translation form of RigidMap.
struct Frame {
    double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    Point2 t{0, 0};

    Point2 apply(Point2 p) const {
        return {m00 * p.x + m01 * p.y + t.x, m10 * p.x + m11 * p.y + t.y};
    }
    void pre_translate(Point2 d) { t = t + d; }
    void pre_rotate(double ang) {
        const double c = std::cos(ang), s = std::sin(ang);
        const double a00 = c * m00 - s * m10, a01 = c * m01 - s * m11;
        const double a10 = s * m00 + c * m10, a11 = s * m01 + c * m11;
        m00 = a00; m01 = a01; m10 = a10; m11 = a11;
        t = {c * t.x - s * t.y, s * t.x + c * t.y};
    }
    void pre_flip_y() {
        m10 = -m10; m11 = -m11; t.y = -t.y;
    }
    void pre_flip_x() {
        m00 = -m00; m01 = -m01; t.x = -t.x;
    }

    RigidMap to_rigid() const {
        RigidMap rm;
        const double det = m00 * m11 - m01 * m10;
        rm.reflection = det < 0;
        // With reflection, A = R(theta) * diag(1,-1); first column is unchanged.
        rm.rotation = std::atan2(m10, m00);
        rm.translation = t;
        return rm;
    }
};

}  // namespace

std::pair<SceneDual, RigidMap> canonicalize(Point2 pA, Point2 pB, const Line2& l,
                                            Point2 side_witness) {
    if (dist(pA, pB) == 0.0)
        fail(ErrorCode::CoincidentPoints, "canonicalize: A and B coincide");

    const Point2 dir = l.direction();
    const double len = norm(dir);
    auto signed_off = [&](Point2 p) { return cross(dir, p - l.p) / len; };
    const double sA = signed_off(pA), sB = signed_off(pB), sW = signed_off(side_witness);
    const double scale = len + norm(pA - l.p) + norm(pB - l.p);
    if (std::abs(sA) < 1e-14 * scale || std::abs(sB) < 1e-14 * scale)
        fail(ErrorCode::PointsOnLine, "canonicalize: a point lies on the line");
    if (std::abs(sW) < 1e-14 * scale)
        fail(ErrorCode::OppositeSides, "canonicalize: side witness lies on the line");
    if (sA * sW < 0 || sB * sW < 0)
        fail(ErrorCode::OppositeSides, "canonicalize: points not on the witness side");

    Frame f;
    f.pre_translate({-l.p.x, -l.p.y});
    f.pre_rotate(-std::atan2(dir.y, dir.x));
    if (f.apply(pA).y < 0) f.pre_flip_y();

    Point2 imA = f.apply(pA), imB = f.apply(pB);
    if (imA.y < imB.y) std::swap(imA, imB);  // relabel so b >= d
    if (std::abs(imA.x - imB.x) < 1e-12 * (1.0 + dist(imA, imB)))
        fail(ErrorCode::VerticalPair, "canonicalize: vertical pair a = c is unsupported");
    if (imA.x > imB.x) {
        f.pre_flip_x();
        imA = {-imA.x, imA.y};
        imB = {-imB.x, imB.y};
    }
    return {SceneDual(imA.x, imA.y, imB.x, imB.y), f.to_rigid()};
}

}  // namespace bisectrix
