#include "bisectrix/philo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bisectrix {

namespace {

Point2 normalized(Point2 v) {
    const double n = norm(v);
    if (n == 0.0) fail(ErrorCode::BadInput, "zero direction vector");
    return {v.x / n, v.y / n};
}

double angle_of(Point2 v) { return std::atan2(v.y, v.x); }

}  // namespace

AngleScene::AngleScene(Point2 vertex_, Point2 dir1_, Point2 dir2_, Point2 interior_)
    : vertex(vertex_), dir1(normalized(dir1_)), dir2(normalized(dir2_)),
      interior(interior_) {
    const double cr = cross(dir1, dir2);
    if (std::abs(cr) < 1e-14)
        fail(ErrorCode::BadInput, "angle must be strictly between 0 and pi");
    if (cr < 0) std::swap(dir1, dir2);
    const auto [s, u] = ray_coords();
    if (!(s > 0) || !(u > 0))
        fail(ErrorCode::NoTransversal, "interior point is not strictly inside the angle");
}

std::pair<double, double> AngleScene::ray_coords() const {
    // interior - vertex = s * dir1 + u * dir2
    const Point2 w = interior - vertex;
    const double cr = cross(dir1, dir2);
    return {cross(w, dir2) / cr, cross(dir1, w) / cr};
}

std::pair<double, double> transversal_interval(const AngleScene& s) {
    // Valid transversal directions sweep the open arc from dir2 to -dir1.
    const double a1 = angle_of(s.dir1);
    double lo = angle_of(s.dir2);
    double hi = a1 + 3.14159265358979323846;
    while (hi <= lo) hi += 2.0 * 3.14159265358979323846;
    while (hi - lo >= 2.0 * 3.14159265358979323846) hi -= 2.0 * 3.14159265358979323846;
    return {lo, hi};
}

std::pair<Point2, Point2> transversal_at(const AngleScene& s, double theta) {
    const Point2 m{std::cos(theta), std::sin(theta)};
    const Line2 cand(s.interior, s.interior + m);
    const Point2 E = intersect_lines(cand, Line2(s.vertex, s.vertex + s.dir1));
    const Point2 F = intersect_lines(cand, Line2(s.vertex, s.vertex + s.dir2));
    return {E, F};
}

PhiloSolution philo_solve(const AngleScene& s) {
    const auto [lo, hi] = transversal_interval(s);
    const double span = hi - lo;
    auto length_at = [&](double th) {
        auto [E, F] = transversal_at(s, th);
        return dist(E, F);
    };

    // Golden-section on the open interval; the length blows up at both ends,
    // so the minimum is interior.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo + 1e-9 * span;
    double b = hi - 1e-9 * span;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = length_at(x1);
    double f2 = length_at(x2);
    while (b - a > 1e-13) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = length_at(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = length_at(x2);
        }
    }
    // Comparison search cannot place the minimum better than about sqrt(eps),
    // so polish theta on the characterization |ED| - |FG| = 0, which crosses
    // zero transversally at the optimum.
    auto excess = [&](double th) {
        auto [E, F] = transversal_at(s, th);
        const Point2 G = perp_foot(s.vertex, Line2(E, F));
        return dist(E, s.interior) - dist(F, G);
    };
    double t0 = 0.5 * (a + b);
    double t1 = t0 + 1e-6 * span;
    double h0 = excess(t0), h1 = excess(t1);
    for (int i = 0; i < 60 && std::abs(h1) > 1e-16; ++i) {
        if (h1 == h0) break;
        const double t2 = t1 - h1 * (t1 - t0) / (h1 - h0);
        if (!(t2 > lo && t2 < hi)) break;
        t0 = t1; h0 = h1;
        t1 = t2; h1 = excess(t1);
    }

    PhiloSolution sol;
    sol.theta = (std::abs(h1) < std::abs(h0)) ? t1 : t0;
    auto [E, F] = transversal_at(s, sol.theta);
    sol.E = E;
    sol.F = F;
    sol.length = dist(E, F);
    sol.G = perp_foot(s.vertex, Line2(E, F));
    sol.residual = std::abs(dist(E, s.interior) - dist(F, sol.G));
    if (sol.residual > 1e-8 * sol.length)
        fail(ErrorCode::SolverFailure, "philo_solve: |ED| = |FG| certificate failed");
    return sol;
}

RightAnglePhilo philo_right_angle(double p, double q) {
    if (!(p > 0) || !(q > 0)) fail(ErrorCode::BadInput, "philo_right_angle: p, q > 0");
    const double t = std::cbrt(q / p);  // tan of the optimal direction
    RightAnglePhilo out;
    out.E = {p + q / t, 0.0};
    out.F = {0.0, q + p * t};
    const double p23 = std::cbrt(p * p), q23 = std::cbrt(q * q);
    out.length = std::pow(p23 + q23, 1.5);
    return out;
}

Problem4Report problem4_check(const AngleScene& s, const PhiloSolution& sol, int n,
                              std::uint64_t seed) {
    Problem4Report rep;
    const Point2 mid = 0.5 * (sol.E + sol.F);
    rep.symmetry_residual = std::abs(dist(mid, s.interior) - dist(mid, sol.G));

    const auto [lo, hi] = transversal_interval(s);
    const double span = hi - lo;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo + 1e-7 * span, hi - 1e-7 * span);
    // Exclude a small neighborhood of the optimum where the quadratic excess
    // would drown in roundoff.
    const double excl = 1e-5 * span;

    double min_excess = std::numeric_limits<double>::infinity();
    int taken = 0;
    while (taken < n) {
        const double th = u(rng);
        if (std::abs(th - sol.theta) < excl) continue;
        auto [E1, F1] = transversal_at(s, th);
        min_excess = std::min(min_excess, dist(E1, F1) - sol.length);
        ++taken;
    }
    rep.min_excess = min_excess;
    return rep;
}

Incenter345Report philo_incenter_345() {
    // Right triangle with legs 4 and 3; incenter at (1, 1).
    const Point2 O{0.0, 0.0}, X{4.0, 0.0}, Y{0.0, 3.0};
    const Point2 incenter{1.0, 1.0};
    Incenter345Report rep{
        {philo_solve(AngleScene(O, X - O, Y - O, incenter)),
         philo_solve(AngleScene(X, O - X, Y - X, incenter)),
         philo_solve(AngleScene(Y, O - Y, X - Y, incenter))},
        0,
        0.0};
    rep.shortest_index = 0;
    for (int i = 1; i < 3; ++i)
        if (rep.per_vertex[i].length < rep.per_vertex[rep.shortest_index].length)
            rep.shortest_index = i;
    rep.shortest_length = rep.per_vertex[rep.shortest_index].length;
    return rep;
}

}  // namespace bisectrix
