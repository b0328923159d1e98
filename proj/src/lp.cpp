#include "bisectrix/lp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bisectrix {

double lp_combine(double u, double v, NormExponent p) {
    switch (p.kind) {
        case NormExponent::Kind::Zero:
            return std::sqrt(u * v);
        case NormExponent::Kind::Infinity:
            return std::max(u, v);
        case NormExponent::Kind::Finite: {
            // Factor out the dominant length to keep the powers in range.
            const double m = (p.p > 0) ? std::max(u, v) : std::min(u, v);
            if (m == 0.0) return 0.0;
            const double su = std::pow(u / m, p.p) + std::pow(v / m, p.p);
            return m * std::pow(su, 1.0 / p.p);
        }
    }
    return 0.0;
}

double eval_lp(const SceneDual& s, NormExponent p, Candidate c1) {
    auto [D1, E1] = ray_hits(s, c1);
    const Point2 C{c1.x, c1.y};
    return lp_combine(dist(C, D1), dist(C, E1), p);
}

LinfSolution solve_linf(const SceneDual& s) {
    LinfSolution out;
    const double k0 = std::cbrt((s.b + s.d) / (s.c - s.a));
    out.k0 = k0;
    if (k0 > (s.b - s.d) / (s.c - s.a)) {
        out.kind = ExistenceCase::MinExists;
        const double xs = 0.5 * (s.a + s.c) - (s.b - s.d) / (2.0 * k0);
        const double ys = 0.5 * (s.b + s.d) - k0 * (s.a - s.c) / 2.0;
        out.C = {xs, ys};
        out.value = eval_lp(s, NormExponent::infinity(), {xs, ys});
    } else {
        out.kind = ExistenceCase::InfimumOnly;
        const double q = (s.c - s.a) / (s.b - s.d);
        out.infimum = s.b * std::sqrt(q * q + 1.0);
    }
    return out;
}

Theorem2Report theorem2_check(const SceneDual& s, int n_samples, std::uint64_t seed) {
    if (s.b == s.d)
        fail(ErrorCode::HypothesisViolation, "theorem2_check requires |AA0| > |BB0|");
    const LinfSolution lin = solve_linf(s);
    if (lin.kind != ExistenceCase::MinExists)
        fail(ErrorCode::NotApplicable, "theorem2_check: the max norm minimum does not exist");

    Theorem2Report rep;
    // Isosceles triangle with apex at the max-norm optimum and base angle
    // arctan(k0); its sides pass through A and B.
    rep.C = lin.C;
    rep.D = {lin.C.x - lin.C.y / lin.k0, 0.0};
    rep.E = {lin.C.x + lin.C.y / lin.k0, 0.0};
    const Point2 A{s.a, s.b}, B{s.c, s.d};
    auto line_dist = [](Point2 p, const Line2& l) {
        return std::abs(cross(l.direction(), p - l.p)) / norm(l.direction());
    };
    rep.construction_residual = std::max(line_dist(A, Line2(rep.D, rep.C)),
                                         line_dist(B, Line2(rep.E, rep.C)));

    const double cd = dist(rep.C, rep.D);
    const Point2 P = intersect_lines(Line2(A, B), Line2(rep.D, rep.E));
    rep.margin_AP = dist(A, P) - cd;

    std::mt19937_64 rng(seed);
    const double span = std::max(dist(rep.D, rep.E), lin.C.y);
    std::uniform_real_distribution<double> ux(rep.D.x - 0.5 * span, rep.E.x + 0.5 * span);
    std::uniform_real_distribution<double> uy(s.b, s.b + 2.0 * span);
    const double excl = 1e-6 * s.scale();

    double min_margin = std::numeric_limits<double>::infinity();
    int taken = 0;
    while (taken < n_samples) {
        const Candidate c1{ux(rng), uy(rng)};
        if (!(c1.y > s.b)) continue;
        if (std::hypot(c1.x - lin.C.x, c1.y - lin.C.y) < excl) continue;
        const double g = eval_lp(s, NormExponent::infinity(), c1);
        min_margin = std::min(min_margin, g - cd);
        ++taken;
    }
    rep.min_margin_max = min_margin;
    return rep;
}

CevianScene build_cevian_scene(Point2 C, Point2 D, Point2 E, double p) {
    if (collinear(C, D, E))
        fail(ErrorCode::DegenerateTriangle, "build_cevian_scene: degenerate triangle");
    CevianScene sc;
    sc.C = C;
    sc.D = D;
    sc.E = E;
    sc.p = p;
    const double ratio = std::pow(dist(D, C) / dist(C, E), p);  // |DK| / |KE|
    sc.K = D + (ratio / (1.0 + ratio)) * (E - D);
    sc.L = perp_foot(sc.K, Line2(C, D));
    sc.M = perp_foot(sc.K, Line2(C, E));
    // Vector conditions AC = DL, BC = EM.
    sc.A = C - (sc.L - D);
    sc.B = C - (sc.M - E);
    return sc;
}

double cevian_objective(const CevianScene& scene, NormExponent p, Point2 c1) {
    const Line2 base(scene.D, scene.E);
    const Point2 bd = base.direction();
    auto hit = [&](Point2 through) {
        // Ray from c1 through the given point, extended to the base line.
        const double s_c1 = cross(bd, c1 - base.p);
        const double s_pt = cross(bd, through - base.p);
        // The crossing parameter along the ray is s_c1 / (s_c1 - s_pt).
        if (!(s_c1 * (s_c1 - s_pt) > 0))
            fail(ErrorCode::DomainViolation,
                 "challenger cannot reach the base line through this point");
        return intersect_lines(Line2(c1, through), base);
    };
    const Point2 D1 = hit(scene.A);
    const Point2 E1 = hit(scene.B);
    return lp_combine(dist(c1, D1), dist(c1, E1), p);
}

namespace {

struct NelderMead {
    // 2-d Nelder-Mead with standard coefficients; objective returns +inf
    // outside the feasible set.
    template <typename F>
    static std::pair<Point2, double> run(F&& f, Point2 start, double step,
                                         int max_iter) {
        std::array<Point2, 3> x{start, start + Point2{step, 0.0},
                                start + Point2{0.0, step}};
        std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};

        auto order = [&] {
            if (fx[0] > fx[1]) { std::swap(fx[0], fx[1]); std::swap(x[0], x[1]); }
            if (fx[1] > fx[2]) { std::swap(fx[1], fx[2]); std::swap(x[1], x[2]); }
            if (fx[0] > fx[1]) { std::swap(fx[0], fx[1]); std::swap(x[0], x[1]); }
        };
        order();

        for (int it = 0; it < max_iter; ++it) {
            const double size = std::max(dist(x[0], x[1]), dist(x[0], x[2]));
            if (size < 1e-12 * (1.0 + norm(x[0]))) break;

            const Point2 cen = 0.5 * (x[0] + x[1]);
            const Point2 xr = cen + 1.0 * (cen - x[2]);
            const double fr = f(xr);
            if (fr < fx[0]) {
                const Point2 xe = cen + 2.0 * (cen - x[2]);
                const double fe = f(xe);
                if (fe < fr) { x[2] = xe; fx[2] = fe; }
                else { x[2] = xr; fx[2] = fr; }
            } else if (fr < fx[1]) {
                x[2] = xr; fx[2] = fr;
            } else {
                const Point2 xc = cen + 0.5 * (x[2] - cen);
                const double fc = f(xc);
                if (fc < fx[2]) { x[2] = xc; fx[2] = fc; }
                else {
                    x[1] = x[0] + 0.5 * (x[1] - x[0]); fx[1] = f(x[1]);
                    x[2] = x[0] + 0.5 * (x[2] - x[0]); fx[2] = f(x[2]);
                }
            }
            order();
        }
        return {x[0], fx[0]};
    }
};

}  // namespace

MinimizeResult numeric_minimize(const SceneDual& s, NormExponent p, int starts,
                                std::uint64_t seed) {
    const double scale = s.scale();
    const double eps_dom = 1e-9 * scale;
    const double floor_y = s.b + eps_dom;

    auto objective = [&](Point2 pt) {
        if (!(pt.y > floor_y)) return std::numeric_limits<double>::infinity();
        return eval_lp(s, p, {pt.x, pt.y});
    };

    std::mt19937_64 rng(seed);
    const double span = std::max(s.c - s.a, s.b);
    std::uniform_real_distribution<double> ux(s.a - span, s.c + span);
    std::uniform_real_distribution<double> uy(0.0, 1.0);

    std::vector<Point2> start_pts;
    start_pts.push_back({0.5 * (s.a + s.c), s.b + 0.5 * span});
    start_pts.push_back({s.a, s.b + 1e-3 * span});
    start_pts.push_back({s.c, s.b + 1e-3 * span});
    while (static_cast<int>(start_pts.size()) < starts)
        start_pts.push_back({ux(rng), s.b + (1e-4 + 2.0 * uy(rng)) * span});

    MinimizeResult best{};
    best.value = std::numeric_limits<double>::infinity();
    for (const Point2& sp : start_pts) {
        auto [pt, val] = NelderMead::run(objective, sp, 0.05 * span, 600);
        // Polish with a shrinking local restart.
        std::tie(pt, val) = NelderMead::run(objective, pt, 1e-5 * span, 300);
        if (val < best.value) {
            best.value = val;
            best.best = {pt.x, pt.y};
        }
    }
    best.boundary_flag = (best.best.y - s.b) < 10.0 * eps_dom;
    return best;
}

namespace {

// Higher of the two constructed points; challengers must stay above both.
Point2 higher_point(const CevianScene& sc) {
    return (sc.A.y >= sc.B.y) ? sc.A : sc.B;
}

}  // namespace

double revalidate(const Certificate& cert, NormExponent p_case) {
    const double gC = lp_combine(dist(cert.scene.C, cert.scene.D),
                                 dist(cert.scene.C, cert.scene.E), p_case);
    const double gC1 = cevian_objective(cert.scene, p_case, cert.challenger);
    return gC - gC1;
}

std::optional<Certificate> find_counterexample(NormExponent p_case, long budget,
                                               std::uint64_t seed) {
    if (budget <= 0) fail(ErrorCode::BadInput, "budget must be positive");
    const double p = (p_case.kind == NormExponent::Kind::Zero) ? 0.0 : p_case.p;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    long used = 0;
    while (used < budget) {
        // Triangle with unit base on y=0 and a small |CD|/|CE| ratio.
        const double r = std::pow(10.0, -3.0 * u01(rng));  // log-uniform in [1e-3, 1]
        const double angD = 0.5 + 0.9 * u01(rng);          // acute
        const double sinE = std::min(1.0, r * std::sin(angD));
        const double angE = std::asin(sinE);
        if (angE <= 1e-6) continue;
        const Point2 D{0.0, 0.0}, E{1.0, 0.0};
        Point2 C;
        try {
            C = intersect_lines(
                Line2(D, D + Point2{std::cos(angD), std::sin(angD)}),
                Line2(E, E + Point2{-std::cos(angE), std::sin(angE)}));
        } catch (const Error&) {
            continue;
        }
        if (!(C.y > 0)) continue;

        CevianScene sc;
        try {
            sc = build_cevian_scene(C, D, E, p);
        } catch (const Error&) {
            continue;
        }
        const double gC = lp_combine(dist(C, D), dist(C, E), p_case);
        const Point2 anchor = higher_point(sc);
        const Point2 other = (anchor.y == sc.A.y && anchor.x == sc.A.x) ? sc.B : sc.A;
        const double floor_y = std::max({sc.A.y, sc.B.y, 0.0});

        // Probe shrinking rings around the constructed points, A first.
        for (int j = 1; j <= 8 && used < budget; ++j) {
            const double rad = std::pow(10.0, -0.75 * j);
            for (int k = 0; k < 8 && used < budget; ++k) {
                ++used;
                const double beta = 2.0 * 3.14159265358979323846 * u01(rng);
                Point2 target = (k % 2 == 0) ? anchor : other;
                Point2 c1{target.x + rad * std::cos(beta),
                          floor_y + rad * std::abs(std::sin(beta)) + 1e-12};
                double g1;
                try {
                    g1 = cevian_objective(sc, p_case, c1);
                } catch (const Error&) {
                    continue;
                }
                const double margin = gC - g1;
                if (margin > 1e-9 * (1.0 + gC)) {
                    Certificate cert{sc, c1, gC, g1, margin, seed};
                    // Only emit certificates that survive re-evaluation.
                    if (std::abs(revalidate(cert, p_case) - margin) < 1e-12 * (1.0 + gC) &&
                        margin > 0)
                        return cert;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace bisectrix
