#pragma once

#include <cstdint>
#include <optional>

#include "bisectrix/dual.hpp"

namespace bisectrix {

/// l_p combination selector: finite nonzero p, the p->0 limit sqrt(u*v),
/// or the max norm.
struct NormExponent {
    enum class Kind { Finite, Zero, Infinity } kind;
    double p = 0.0;  // meaningful for Finite only

    static NormExponent finite(double p_) {
        if (p_ == 0.0)
            fail(ErrorCode::BadInput, "finite exponent must be nonzero; use zero()");
        return {Kind::Finite, p_};
    }
    static NormExponent zero() { return {Kind::Zero, 0.0}; }
    static NormExponent infinity() { return {Kind::Infinity, 0.0}; }
};

/// Combine two positive lengths under the given exponent.
double lp_combine(double u, double v, NormExponent p);

double eval_lp(const SceneDual& s, NormExponent p, Candidate c1);

struct LinfSolution {
    ExistenceCase kind;
    Point2 C{0.0, 0.0};  // Minimum payload
    double value = 0.0;
    double k0 = 0.0;
    double infimum = 0.0;  // InfimumOnly payload
};

LinfSolution solve_linf(const SceneDual& s);

struct Theorem2Report {
    double min_margin_max;  // min over challengers of max(|C1D1|,|C1E1|) - |CD|
    double margin_AP;       // |AP| - |CD|
    Point2 C, D, E;         // the built isosceles triangle
    double construction_residual;  // distance of A, B from the sides
};

Theorem2Report theorem2_check(const SceneDual& s, int n_samples, std::uint64_t seed);

/// Triangle CDE with the cevian-derived points of the generalized problem.
struct CevianScene {
    Point2 C, D, E;
    double p;
    Point2 A, B, K, L, M;
};

CevianScene build_cevian_scene(Point2 C, Point2 D, Point2 E, double p);

struct MinimizeResult {
    Candidate best;
    double value;
    bool boundary_flag;
};

MinimizeResult numeric_minimize(const SceneDual& s, NormExponent p, int starts,
                                std::uint64_t seed);

/// Reproducible counterexample record for the p != 1 open problem.
struct Certificate {
    CevianScene scene;
    Point2 challenger;
    double g_at_C;
    double g_at_C1;
    double margin;  // g_at_C - g_at_C1 > 0
    std::uint64_t seed;
};

/// Objective of the cevian scene at a challenger apex: the l_p combination of
/// the two cut segments on line DE. Throws DomainViolation if the challenger
/// cannot see both A and B down to the base line.
double cevian_objective(const CevianScene& scene, NormExponent p, Point2 c1);

std::optional<Certificate> find_counterexample(NormExponent p_case, long budget,
                                               std::uint64_t seed);

/// Recompute the margin of a certificate from its stored fields.
double revalidate(const Certificate& cert, NormExponent p_case);

}  // namespace bisectrix
