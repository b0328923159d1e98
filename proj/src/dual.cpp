#include "bisectrix/dual.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace bisectrix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) fail(ErrorCode::BadInput, std::string(what) + " is not finite");
}

void require_domain(const SceneDual& s, Candidate c1) {
    if (!(c1.y > s.b))
        fail(ErrorCode::DomainViolation, "candidate apex must satisfy y > b");
}

// Per-point term of the objective: f_i = y * r / w with w = y - h, r = |(dx, w)|.
struct Term {
    double dx, w, r;
    Term(double x, double y, double px, double py) : dx(x - px), w(y - py) {
        r = std::hypot(dx, w);
    }
};

}  // namespace

SceneDual::SceneDual(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(c, "c");
    require_finite(d, "d");
    if (!(a < c)) fail(ErrorCode::BadInput, "scene requires a < c");
    if (!(b >= d)) fail(ErrorCode::BadInput, "scene requires b >= d");
    if (!(d > 0)) fail(ErrorCode::BadInput, "scene requires d > 0");
}

double SceneDual::scale() const {
    return 1.0 + std::hypot(c - a, b - d) + b;
}

std::pair<Point2, Point2> ray_hits(const SceneDual& s, Candidate c1) {
    require_domain(s, c1);
    const double x1 = (s.a * c1.y - s.b * c1.x) / (c1.y - s.b);
    const double x2 = (s.c * c1.y - s.d * c1.x) / (c1.y - s.d);
    return {Point2{x1, 0.0}, Point2{x2, 0.0}};
}

double eval_objective(const SceneDual& s, Candidate c1) {
    require_domain(s, c1);
    const Term t1(c1.x, c1.y, s.a, s.b);
    const Term t2(c1.x, c1.y, s.c, s.d);
    return c1.y * (t1.r / t1.w + t2.r / t2.w);
}

std::pair<double, double> grad_objective(const SceneDual& s, Candidate c1) {
    require_domain(s, c1);
    const Term t1(c1.x, c1.y, s.a, s.b);
    const Term t2(c1.x, c1.y, s.c, s.d);
    const double y = c1.y;
    const double fx = y * t1.dx / (t1.w * t1.r) + y * t2.dx / (t2.w * t2.r);
    auto fy_term = [y](const Term& t) {
        return t.r / t.w - y * t.dx * t.dx / (t.r * t.w * t.w);
    };
    return {fx, fy_term(t1) + fy_term(t2)};
}

HessianDiagnostics hessian_diagnostics(const SceneDual& s, Candidate c1) {
    require_domain(s, c1);
    const Term t1(c1.x, c1.y, s.a, s.b);
    const Term t2(c1.x, c1.y, s.c, s.d);
    const double y = c1.y;

    auto fxx_term = [y](const Term& t) { return y * t.w / (t.r * t.r * t.r); };
    auto fxy_term = [y](const Term& t) {
        const double r2 = t.r * t.r, w2 = t.w * t.w;
        return t.dx * (t.w * r2 - y * (r2 + w2)) / (w2 * t.r * r2);
    };
    auto fyy_term = [y](const Term& t) {
        const double r2 = t.r * t.r;
        return -t.dx * t.dx * (2.0 * r2 * t.w - y * t.w * t.w - 2.0 * y * r2) /
               (t.r * r2 * t.w * t.w * t.w);
    };

    const double fxx = fxx_term(t1) + fxx_term(t2);
    const double fxy = fxy_term(t1) + fxy_term(t2);
    const double fyy = fyy_term(t1) + fyy_term(t2);

    // Closed form for the first summand's Hessian determinant.
    const double detH_f1 =
        -s.b * s.b * t1.dx * t1.dx / (t1.w * t1.w * t1.w * t1.w * t1.r * t1.r);

    return {fxx, detH_f1, fxx * fyy - fxy * fxy};
}

double directional_limit(const SceneDual& s, double k1, double k2) {
    if (s.b == s.d)
        fail(ErrorCode::NotApplicable, "directional limit is infinite when b = d");
    if (!(k2 > 0)) fail(ErrorCode::DomainViolation, "directional limit requires k2 > 0");
    return s.b * (std::sqrt((k1 * k1 + k2 * k2) / (k2 * k2)) +
                  std::hypot(s.b - s.d, s.a - s.c) / (s.b - s.d));
}

Classification classify_existence(const SceneDual& s) {
    if (s.symmetric_heights()) return {kInf, ExistenceCase::MinExists};
    const double sigma =
        s.d - s.b + s.d * (s.c - s.a) / std::sqrt(s.b * s.b - s.d * s.d);
    return {sigma, sigma > 0 ? ExistenceCase::MinExists : ExistenceCase::InfimumOnly};
}

double infimum_value(const SceneDual& s) {
    if (classify_existence(s).kind != ExistenceCase::InfimumOnly)
        fail(ErrorCode::NotApplicable, "infimum_value: the minimum is attained");
    const double q = (s.a - s.c) / (s.b - s.d);
    return s.b * (1.0 + std::sqrt(1.0 + q * q));
}

double phi(const SceneDual& s, double t) {
    if (s.b == s.d)
        fail(ErrorCode::NotApplicable, "phi is undefined in the b = d frame");
    if (t < s.b) fail(ErrorCode::DomainViolation, "phi requires t >= b");
    const double rb = std::sqrt(std::max(0.0, 1.0 - s.b * s.b / (t * t)));
    const double rd = std::sqrt(std::max(0.0, 1.0 - s.d * s.d / (t * t)));
    const double num =
        (s.b * s.d - t * t) * (rb + rd) + s.b * s.d * (s.c - s.a) / t;
    const double den = s.b * rd + s.d * rb;
    return num / den;
}

double solve_phi_root(const SceneDual& s) {
    const Classification cls = classify_existence(s);
    if (s.symmetric_heights() || !(cls.sigma > 0))
        fail(ErrorCode::NotApplicable, "phi root requires b > d and sigma > 0");

    // phi(b) = sigma > 0; grow the upper end by doubling until the sign flips.
    double lo = s.b;
    double hi = 2.0 * s.b;
    int guard = 0;
    while (phi(s, hi) > 0) {
        hi *= 2.0;
        if (++guard > 200)
            fail(ErrorCode::SolverFailure, "phi root bracket did not close");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double v = (mid == s.b) ? cls.sigma : phi(s, mid);
        if (v > 0)
            lo = mid;
        else
            hi = mid;
    }
    double t0 = 0.5 * (lo + hi);
    // Newton polish with a numerical derivative to push the residual from the
    // bisection level down to machine precision.
    for (int i = 0; i < 8; ++i) {
        const double f = phi(s, t0);
        if (std::abs(f) < 1e-15) break;
        const double h = 1e-7 * t0;
        const double df = (phi(s, t0 + h) - phi(s, std::max(s.b, t0 - h))) /
                          (t0 + h - std::max(s.b, t0 - h));
        if (df == 0.0) break;
        const double tn = t0 - f / df;
        if (!(tn > s.b) || !std::isfinite(tn)) break;
        t0 = tn;
    }
    if (std::abs(phi(s, t0)) > 1e-12 * (1.0 + std::abs(t0)) * s.scale())
        fail(ErrorCode::SolverFailure, "phi root did not converge");
    return t0;
}

namespace {

double eval_poly(const std::array<double, 5>& c, double x) {
    return (((c[0] * x + c[1]) * x + c[2]) * x + c[3]) * x + c[4];
}

// One real root of a monic cubic x^3 + a x^2 + b x + c.
double cubic_real_root(double a, double b, double c) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    double t;
    if (disc >= 0) {
        const double sq = std::sqrt(disc);
        t = std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq);
    } else {
        const double r = std::sqrt(-p * p * p / 27.0);
        const double ang = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
        t = 2.0 * std::cbrt(r) * std::cos(ang / 3.0);
    }
    return t - a / 3.0;
}

void push_quadratic_roots(double b, double c, std::vector<double>& out) {
    // x^2 + b x + c, real roots only; a slightly negative discriminant is
    // treated as a double root and left to Newton polishing.
    const double disc = b * b / 4.0 - c;
    if (disc < -1e-10 * (1.0 + b * b + std::abs(c))) return;
    const double sq = std::sqrt(std::max(0.0, disc));
    // Stable form: avoid cancellation in the smaller root.
    if (b >= 0) {
        const double r1 = -b / 2.0 - sq;
        out.push_back(r1);
        out.push_back(r1 != 0.0 ? c / r1 : -b / 2.0 + sq);
    } else {
        const double r1 = -b / 2.0 + sq;
        out.push_back(r1);
        out.push_back(r1 != 0.0 ? c / r1 : -b / 2.0 - sq);
    }
}

}  // namespace

std::vector<double> quartic_roots(double c4, double c3, double c2, double c1,
                                  double c0) {
    if (c4 == 0.0) fail(ErrorCode::LeadingZero, "quartic_roots: leading coefficient is zero");
    const std::array<double, 5> coeffs{c4, c3, c2, c1, c0};
    const double cmax =
        std::max({std::abs(c4), std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});

    // Monic, then depressed: x = u - p/4.
    const double p = c3 / c4, q = c2 / c4, r = c1 / c4, s = c0 / c4;
    const double alpha = q - 3.0 * p * p / 8.0;
    const double beta = r - p * q / 2.0 + p * p * p / 8.0;
    const double gamma =
        s - 3.0 * p * p * p * p / 256.0 + p * p * q / 16.0 - p * r / 4.0;

    std::vector<double> roots;
    const double scale = 1.0 + std::abs(alpha) + std::abs(beta) + std::abs(gamma);
    if (std::abs(beta) < 1e-14 * scale) {
        // Biquadratic: u^4 + alpha u^2 + gamma = 0.
        std::vector<double> z;
        push_quadratic_roots(alpha, gamma, z);
        for (double zi : z) {
            if (zi < -1e-12 * scale) continue;
            const double u = std::sqrt(std::max(0.0, zi));
            roots.push_back(u);
            roots.push_back(-u);
        }
    } else {
        // Ferrari: m solves 8m^3 + 8 alpha m^2 + (2 alpha^2 - 8 gamma) m - beta^2 = 0.
        double m = cubic_real_root(alpha, (alpha * alpha - 4.0 * gamma) / 4.0,
                                   -beta * beta / 8.0);
        if (m <= 0) m = 1e-300;  // beta != 0 forces a positive root; guard roundoff
        const double s2m = std::sqrt(2.0 * m);
        const double h = alpha / 2.0 + m;
        // (u^2 + h)^2 = 2m (u - beta/(4m))^2
        // u^2 - s2m u + (h + s2m * beta/(4m)) = 0 and u^2 + s2m u + (h - ...) = 0
        const double shift = beta / (4.0 * m) * s2m;
        push_quadratic_roots(-s2m, h + shift, roots);
        push_quadratic_roots(s2m, h - shift, roots);
    }

    for (double& u : roots) u -= p / 4.0;

    // Newton polishing on the original quartic.
    auto poly = [&](double x) { return eval_poly(coeffs, x); };
    auto dpoly = [&](double x) {
        return ((4.0 * c4 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1;
    };
    for (double& x : roots) {
        for (int it = 0; it < 60; ++it) {
            const double fv = poly(x);
            if (std::abs(fv) < 1e-15 * cmax * (1.0 + std::pow(std::abs(x), 4))) break;
            const double dv = dpoly(x);
            if (dv == 0.0) break;
            const double step = fv / dv;
            x -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double x : roots) {
        if (std::abs(poly(x)) > 1e-12 * cmax * std::pow(1.0 + std::abs(x), 4)) continue;
        if (!out.empty() && std::abs(x - out.back()) < 1e-10 * (1.0 + std::abs(x)))
            continue;
        out.push_back(x);
    }
    return out;
}

DualQuartic dual_quartic(const SceneDual& s) {
    if (s.b == s.d)
        fail(ErrorCode::NotApplicable, "dual quartic requires b > d");
    const double a = s.a, b = s.b, c = s.c, d = s.d;

    DualQuartic out;
    out.coeffs = {b * b - d * d,
                  2.0 * b * d * a - 2.0 * b * c,
                  -2.0 * b * b * b * d + 2.0 * b * b * d * d + 2.0 * b * d * d * d -
                      2.0 * d * d * d * d,
                  -2.0 * a * b * b * d * d + 2.0 * a * b * d * d * d +
                      2.0 * b * b * c * d - 2.0 * b * c * d * d,
                  a * a * b * b * d * d + b * b * b * b * d * d -
                      2.0 * b * b * b * d * d * d + 2.0 * b * d * d * d * d * d -
                      d * d * d * d * d * d - 2.0 * a * b * b * c * d + b * b * c * c};

    // Rationalized form: with lambda = sqrt(t^2 - d^2), m = b d (c - a) and
    // Q = lambda^2 + d^2 - b d, the locus equation (t^2 - bd)(lambda + mu) = m
    // with mu = sqrt(lambda^2 - (b^2 - d^2)) squares to
    // (b^2 - d^2) Q^2 - 2 m lambda Q + m^2 = 0.
    const double m = b * d * (c - a);
    const double k = d * (d - b);  // Q = lambda^2 + k
    out.rederived_coeffs = {b * b - d * d,
                           -2.0 * m,
                           2.0 * k * (b * b - d * d),
                           -2.0 * m * k,
                           (b * b - d * d) * k * k + m * m};

    out.near_degenerate_leading =
        std::abs(b * b - d * d) < 1e-8 * s.scale() * s.scale();

    double t0 = 0.0;
    bool have_t0 = true;
    try {
        t0 = solve_phi_root(s);
    } catch (const Error&) {
        have_t0 = false;  // sigma <= 0: no root to validate against
    }

    auto validate = [&](const std::array<double, 5>& cf, double& best_lambda,
                        double& best_t) {
        if (!have_t0 || cf[0] == 0.0) return false;
        std::vector<double> roots;
        try {
            roots = quartic_roots(cf[0], cf[1], cf[2], cf[3], cf[4]);
        } catch (const Error&) {
            return false;
        }
        bool ok = false;
        for (double lam : roots) {
            const double t = std::sqrt(d * d + lam * lam);
            if (t < b) continue;
            if (std::abs(phi(s, t)) < 1e-8 * s.scale()) {
                if (!ok || std::abs(t - t0) < std::abs(best_t - t0)) {
                    best_lambda = lam;
                    best_t = t;
                }
                ok = true;
            }
        }
        return ok;
    };

    double lam_p = 0.0, t_p = 0.0, lam_r = 0.0, t_r = 0.0;
    out.validated = validate(out.coeffs, lam_p, t_p);
    out.rederived_validated = validate(out.rederived_coeffs, lam_r, t_r);
    if (out.validated) {
        out.lambda = lam_p;
        out.t_from_quartic = t_p;
    } else if (out.rederived_validated) {
        out.lambda = lam_r;
        out.t_from_quartic = t_r;
    }
    return out;
}

namespace {

Point2 foot_on_axis(Point2 p) { return {p.x, 0.0}; }

// Intersection with the x axis of the line through p perpendicular to dir;
// nullopt when dir is horizontal (the foot escapes to infinity).
std::optional<Point2> perp_line_axis_hit(Point2 p, Point2 dir, double scale) {
    // Perpendicular direction to dir is (-dir.y, dir.x).
    if (std::abs(dir.x) < 1e-12 * scale) return std::nullopt;  // perp is horizontal
    // p + t (-dir.y, dir.x) with y = 0: t = -p.y / dir.x
    const double t = -p.y / dir.x;
    return Point2{p.x - t * dir.y, 0.0};
}

}  // namespace

TriangleConfig config_from_candidate(const SceneDual& s, Candidate c1) {
    auto [D, E] = ray_hits(s, c1);
    TriangleConfig cfg;
    cfg.C = {c1.x, c1.y};
    cfg.D = D;
    cfg.E = E;
    cfg.A = {s.a, s.b};
    cfg.B = {s.c, s.d};
    if (collinear(cfg.C, D, E))
        fail(ErrorCode::DegenerateApex, "apex is collinear with the base");
    cfg.K = angle_bisector_foot(cfg.C, D, E);
    cfg.L = perp_foot(cfg.K, Line2(cfg.C, D));
    cfg.M = perp_foot(cfg.K, Line2(cfg.C, E));
    cfg.A0 = foot_on_axis(cfg.A);
    cfg.B0 = foot_on_axis(cfg.B);
    cfg.C0 = foot_on_axis(cfg.C);
    const Line2 axis(Point2{0.0, 0.0}, Point2{1.0, 0.0});
    if (!s.symmetric_heights()) {
        cfg.P = intersect_lines(Line2(cfg.A, cfg.B), axis);
    }
    const Point2 ml = cfg.L - cfg.M;
    if (std::abs(ml.y) > 1e-12 * (1.0 + norm(ml))) {
        cfg.Q = intersect_lines(Line2(cfg.M, cfg.L), axis);
    }
    return cfg;
}

TriangleConfig reconstruct(const SceneDual& s, double t0) {
    if (!(t0 > s.b)) fail(ErrorCode::DomainViolation, "reconstruct requires t0 > b");
    const double x1 = s.a - std::sqrt(t0 * t0 - s.b * s.b);
    const double x2 = s.c + std::sqrt(t0 * t0 - s.d * s.d);
    const Point2 D{x1, 0.0}, E{x2, 0.0};
    const Point2 A{s.a, s.b}, B{s.c, s.d};
    const Point2 C = intersect_lines(Line2(D, A), Line2(E, B));

    TriangleConfig cfg = config_from_candidate(s, {C.x, C.y});
    const double scl = s.scale();

    // The defining property of the optimal offset.
    const double res1 = std::abs(dist(cfg.A, cfg.C) - dist(cfg.L, cfg.D));
    const double res2 = std::abs(dist(cfg.B, cfg.C) - dist(cfg.M, cfg.E));
    if (res1 > 1e-7 * scl || res2 > 1e-7 * scl)
        fail(ErrorCode::SolverFailure, "reconstruct: |AC|=|LD|, |BC|=|ME| violated");

    if (!s.symmetric_heights()) {
        // Cross-check the apex ordinate against the closed form.
        const double sb = std::sqrt(t0 * t0 - s.b * s.b);
        const double sd = std::sqrt(t0 * t0 - s.d * s.d);
        const double y0 = s.d * s.b * (sd * s.b - s.d * sb) * (sd + sb - s.a + s.c) /
                          (t0 * t0 * (s.b * s.b - s.d * s.d));
        if (std::abs(C.y - y0) > 1e-8 * (1.0 + std::abs(y0)) * scl)
            fail(ErrorCode::SolverFailure, "reconstruct: apex ordinate cross-check failed");
    }
    return cfg;
}

OptimalityReport verify_optimality(const SceneDual& s, const TriangleConfig& cfg) {
    const Point2 C = cfg.C, D = cfg.D, E = cfg.E, A = cfg.A, B = cfg.B;
    if (!(C.y > s.b))
        fail(ErrorCode::DomainViolation, "verify_optimality: apex outside the domain");
    const double scl = s.scale();
    const Line2 base(D, E);

    const Point2 H = perp_foot(C, base);

    auto along = [](Point2 from, Point2 to, double len) {
        const Point2 u = (1.0 / dist(from, to)) * (to - from);
        return from + len * u;
    };
    const Point2 L1 = along(D, C, dist(A, C));
    const Point2 M1 = along(E, C, dist(B, C));

    const auto k1 = perp_line_axis_hit(L1, C - D, scl);
    const auto k2 = perp_line_axis_hit(M1, C - E, scl);

    OptimalityReport rep;
    rep.right_angle_at_d = !k1.has_value();
    rep.right_angle_at_e = !k2.has_value();

    const Point2 U = angle_bisector_foot(C, D, E);

    if (k1 && k2) {
        rep.cond1_residual =
            std::abs(dist(*k1, L1) - dist(*k2, M1)) / scl;
        rep.coincidence = std::max(dist(*k1, U), dist(*k2, U)) / scl;
    } else if (k2) {
        // Right angle at D: the reduced condition is K2 = U.
        rep.cond1_residual = 0.0;
        rep.coincidence = dist(*k2, U) / scl;
    } else if (k1) {
        rep.cond1_residual = 0.0;
        rep.coincidence = dist(*k1, U) / scl;
    } else {
        fail(ErrorCode::DegenerateApex, "both base angles are right angles");
    }

    const double lhs = dist(C, D) + dist(C, E);
    const double dh = dist(D, H), eh = dist(E, H);
    const double l1d = dist(L1, D), m1e = dist(M1, E);
    if (l1d > 0 && m1e > 0)
        rep.cond2_residual = std::abs(lhs - (dh * dh / l1d + eh * eh / m1e)) / scl;

    auto [fx, fy] = grad_objective(s, {C.x, C.y});
    rep.grad_norm = std::hypot(fx, fy) / scl;

    const double h = 1e-6 * scl;
    const double gx =
        (eval_objective(s, {C.x + h, C.y}) - eval_objective(s, {C.x - h, C.y})) /
        (2.0 * h);
    const double gy =
        (eval_objective(s, {C.x, C.y + h}) - eval_objective(s, {C.x, C.y - h})) /
        (2.0 * h);
    rep.fd_grad_error = std::hypot(fx - gx, fy - gy) / (1.0 + std::hypot(gx, gy));

    return rep;
}

namespace {

// b = d: the optimum lies on the perpendicular bisector x = (a+c)/2; locate
// the fy sign change on that section.
double symmetric_section_root(const SceneDual& s) {
    const double x = 0.5 * (s.a + s.c);
    auto fy = [&](double y) { return grad_objective(s, {x, y}).second; };
    double lo = s.b + 1e-10 * s.scale();
    int guard = 0;
    while (fy(lo) >= 0) {
        lo = s.b + (lo - s.b) / 4.0;
        if (++guard > 100)
            fail(ErrorCode::SolverFailure, "symmetric section: no descent near the base");
    }
    double hi = s.b + 2.0 * s.scale();
    guard = 0;
    while (fy(hi) <= 0) {
        hi = s.b + 2.0 * (hi - s.b);
        if (++guard > 200)
            fail(ErrorCode::SolverFailure, "symmetric section bracket did not close");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fy(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

DualSolution solve_dual(const SceneDual& s) {
    DualSolution sol;
    const Classification cls = classify_existence(s);
    if (cls.kind == ExistenceCase::InfimumOnly) {
        sol.kind = ExistenceCase::InfimumOnly;
        sol.limit_point = {s.a, s.b};
        sol.infimum = infimum_value(s);
        return sol;
    }

    sol.kind = ExistenceCase::MinExists;
    if (s.symmetric_heights()) {
        const double y = symmetric_section_root(s);
        const Candidate c1{0.5 * (s.a + s.c), y};
        sol.config = config_from_candidate(s, c1);
        sol.t0 = dist(sol.config->A, sol.config->D);
    } else {
        sol.t0 = solve_phi_root(s);
        sol.config = reconstruct(s, sol.t0);
    }
    sol.value = dist(sol.config->C, sol.config->D) + dist(sol.config->C, sol.config->E);
    sol.report = verify_optimality(s, *sol.config);
    return sol;
}

namespace {

double rel_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

TriangleConfig mirrored(const TriangleConfig& cfg) {
    auto m = [](Point2 p) { return Point2{-p.x, p.y}; };
    TriangleConfig out;
    out.C = m(cfg.C);
    out.D = m(cfg.E);
    out.E = m(cfg.D);
    out.A = m(cfg.B);
    out.B = m(cfg.A);
    out.K = m(cfg.K);
    out.L = m(cfg.M);
    out.M = m(cfg.L);
    out.A0 = m(cfg.B0);
    out.B0 = m(cfg.A0);
    out.C0 = m(cfg.C0);
    if (cfg.P) out.P = m(*cfg.P);
    if (cfg.Q) out.Q = m(*cfg.Q);
    return out;
}

}  // namespace

IdentityResiduals remark2_identities(const TriangleConfig& cfg_in) {
    const double cd = dist(cfg_in.C, cfg_in.D);
    const double ce = dist(cfg_in.C, cfg_in.E);
    // The identities assume |CD| < |CE|; mirror the configuration otherwise.
    const TriangleConfig cfg = (cd > ce) ? mirrored(cfg_in) : cfg_in;

    const double CD = dist(cfg.C, cfg.D), CE = dist(cfg.C, cfg.E);
    const double DE = dist(cfg.D, cfg.E);
    const double iso_gap = rel_residual(CD, CE);

    IdentityResiduals out{};
    auto [R, area] = circum_area(cfg.C, cfg.D, cfg.E);
    out.id2 = rel_residual(DE, dist(cfg.A0, cfg.B0) + area / R);
    out.id3 = rel_residual(dist(cfg.A, cfg.A0) * CD, dist(cfg.B, cfg.B0) * CE);
    out.id4 = rel_residual(dist(cfg.C, cfg.A) + dist(cfg.C, cfg.B),
                           DE * DE / (CE + CD));
    out.id6 = rel_residual(dist(cfg.C, cfg.A) * dist(cfg.E, cfg.C0),
                           dist(cfg.C, cfg.B) * dist(cfg.D, cfg.C0));

    if (cfg.P && cfg.Q && iso_gap > 1e-9) {
        // |PE| = |QD| = |DC0| |DE| / (|EC0| - |DC0|). (The reference statement
        // divides |DE|^2 by |B0C0| - |A0C0| instead, which contradicts the
        // |PQ| identity below; see docs/remark-errata.md.)
        const double dc0 = dist(cfg.D, cfg.C0), ec0 = dist(cfg.E, cfg.C0);
        const double rhs = dc0 * DE / (ec0 - dc0);
        const double pe = dist(*cfg.P, cfg.E);
        const double qd = dist(*cfg.Q, cfg.D);
        out.id1 = std::max(rel_residual(pe, rhs), rel_residual(pe, qd));
        out.id5 = rel_residual(dist(*cfg.P, *cfg.Q), DE * DE * DE / (CE * CE - CD * CD));
    }
    return out;
}

double corollary1_check(const TriangleConfig& cfg_in) {
    const double cd = dist(cfg_in.C, cfg_in.D);
    const double ce = dist(cfg_in.C, cfg_in.E);
    const TriangleConfig cfg = (cd > ce) ? mirrored(cfg_in) : cfg_in;
    if (!cfg.P)
        fail(ErrorCode::IsoscelesDegenerate, "corollary margin needs |CE| > |CD|");
    return (dist(cfg.A, cfg.A0) + dist(cfg.A, *cfg.P)) -
           (dist(cfg.C, cfg.D) + dist(cfg.C, cfg.E));
}

}  // namespace bisectrix
