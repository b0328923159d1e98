#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bisectrix/geom.hpp"

namespace bisectrix {

/// Canonical problem instance: points A(a,b), B(c,d) above the fixed line y=0,
/// with a < c and b >= d > 0.
struct SceneDual {
    double a, b, c, d;

    SceneDual(double a_, double b_, double c_, double d_);

    bool symmetric_heights() const { return b == d; }

    /// 1 + scene diameter; residuals are reported relative to this.
    double scale() const;
};

/// Trial apex; the objective domain is the open half plane y > b.
struct Candidate {
    double x, y;
};

enum class ExistenceCase { MinExists, InfimumOnly };

struct Classification {
    double sigma;  // +inf sentinel when b == d
    ExistenceCase kind;
};

struct OptimalityReport {
    double grad_norm = 0.0;
    double cond1_residual = 0.0;   // | |K1L1| - |K2M1| |
    double cond2_residual = 0.0;   // length-sum vs |DH|^2/|L1D| + |EH|^2/|M1E|
    double coincidence = 0.0;      // max(|K1 - U|, |K2 - U|)
    double fd_grad_error = 0.0;
    bool right_angle_at_d = false;
    bool right_angle_at_e = false;
};

/// Full labeled configuration of the optimal (or a candidate) triangle.
struct TriangleConfig {
    Point2 C, D, E, A, B, K, L, M, A0, B0, C0;
    std::optional<Point2> P;  // AB meets DE; absent when AB is parallel to DE
    std::optional<Point2> Q;  // ML meets DE
};

struct DualSolution {
    ExistenceCase kind;
    // MinimumFound payload
    std::optional<TriangleConfig> config;
    double value = 0.0;
    double t0 = 0.0;
    std::optional<OptimalityReport> report;
    // InfimumOnly payload
    Point2 limit_point{0.0, 0.0};
    double infimum = 0.0;
};

std::pair<Point2, Point2> ray_hits(const SceneDual& s, Candidate c1);

double eval_objective(const SceneDual& s, Candidate c1);

std::pair<double, double> grad_objective(const SceneDual& s, Candidate c1);

struct HessianDiagnostics {
    double fxx;       // > 0 throughout the domain
    double detH_f1;   // <= 0, zero only at x = a
    double detH_f;    // full Hessian determinant of f
};

HessianDiagnostics hessian_diagnostics(const SceneDual& s, Candidate c1);

/// Closed-form limit of f along the ray (a + k1 t, b + k2 t), t -> 0+.
double directional_limit(const SceneDual& s, double k1, double k2);

Classification classify_existence(const SceneDual& s);

double infimum_value(const SceneDual& s);

/// Ordinate of the locus of the intersection of the two perpendicular-feet
/// lines, as the common offset t = |AD1| = |BE1| varies.
double phi(const SceneDual& s, double t);

double solve_phi_root(const SceneDual& s);

/// All real roots of c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0, multiplicities
/// collapsed.
std::vector<double> quartic_roots(double c4, double c3, double c2, double c1,
                                  double c0);

struct DualQuartic {
    std::array<double, 5> coeffs;             // as transcribed (c4..c0)
    std::array<double, 5> rederived_coeffs;   // from rationalizing phi(t)=0
    bool validated;            // transcribed set reproduces the phi root
    bool rederived_validated;  // rederived set reproduces the phi root
    double lambda = 0.0;       // selected root (from whichever set validates)
    double t_from_quartic = 0.0;
    bool near_degenerate_leading = false;  // b ~ d
};

DualQuartic dual_quartic(const SceneDual& s);

TriangleConfig reconstruct(const SceneDual& s, double t0);

/// Build the labeled configuration for an arbitrary candidate apex (no
/// optimality assumed).
TriangleConfig config_from_candidate(const SceneDual& s, Candidate c1);

OptimalityReport verify_optimality(const SceneDual& s, const TriangleConfig& cfg);

DualSolution solve_dual(const SceneDual& s);

struct IdentityResiduals {
    // Relative residuals |lhs-rhs|/(|lhs|+|rhs|), in the order:
    // 1: |PE| = |QD| = |DC0||DE|/(|EC0|-|DC0|)  (corrected; see docs/remark-errata.md)
    // 2: |DE| = |A0B0| + area/R
    // 3: |AA0|/|BB0| = |CE|/|CD|
    // 4: |CA|+|CB| = |DE|^2/(|CE|+|CD|)
    // 5: |PQ| = |DE|^3/(|CE|^2-|CD|^2)
    // 6: |CA|/|CB| = |DC0|/|EC0|
    std::optional<double> id1;  // absent for isosceles configurations
    double id2, id3, id4;
    std::optional<double> id5;
    double id6;
};

IdentityResiduals remark2_identities(const TriangleConfig& cfg);

double corollary1_check(const TriangleConfig& cfg);

}  // namespace bisectrix
