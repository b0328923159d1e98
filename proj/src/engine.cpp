#include "bisectrix/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "bisectrix/dual.hpp"
#include "bisectrix/lp.hpp"
#include "bisectrix/philo.hpp"

namespace bisectrix::engine {

using nlohmann::json;

namespace {

void check_fields(const json& obj, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
    if (!obj.is_object()) fail(ErrorCode::BadInput, where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(ErrorCode::BadInput, where + ": unknown field '" + it.key() + "'");
    for (const auto& k : required)
        if (!obj.contains(k))
            fail(ErrorCode::BadInput, where + ": missing field '" + k + "'");
}

double get_num(const json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_number())
        fail(ErrorCode::BadInput, "field '" + key + "' must be a number");
    const double v = obj[key].get<double>();
    if (!std::isfinite(v)) fail(ErrorCode::BadInput, "field '" + key + "' must be finite");
    return v;
}

std::int64_t get_int(const json& obj, const std::string& key, std::int64_t dflt,
                     bool required = false) {
    if (!obj.contains(key)) {
        if (required) fail(ErrorCode::BadInput, "field '" + key + "' is required");
        return dflt;
    }
    if (!obj[key].is_number_integer())
        fail(ErrorCode::BadInput, "field '" + key + "' must be an integer");
    return obj[key].get<std::int64_t>();
}

json pt(Point2 p) { return json::array({p.x, p.y}); }

double get_num(const json& arr, int i, const std::string& key);

Point2 get_pt(const json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 2)
        fail(ErrorCode::BadInput, "field '" + key + "' must be a point [x, y]");
    return {get_num(obj[key], 0, key), get_num(obj[key], 1, key)};
}

double get_num(const json& arr, int i, const std::string& key) {
    if (!arr[i].is_number())
        fail(ErrorCode::BadInput, "field '" + key + "' must hold numbers");
    const double v = arr[i].get<double>();
    if (!std::isfinite(v)) fail(ErrorCode::BadInput, "field '" + key + "' must be finite");
    return v;
}

void check_schema_version(const json& p) {
    if (p.contains("schema_version") &&
        (!p["schema_version"].is_number_integer() || p["schema_version"] != 1))
        fail(ErrorCode::BadInput, "unsupported schema_version");
}

SceneDual dual_scene(const json& p) {
    check_schema_version(p);
    check_fields(p, {"schema_version", "kind", "a", "b", "c", "d", "p", "seed",
                     "starts", "n", "budget"},
                 {"a", "b", "c", "d"}, "dual scene");
    if (p.contains("kind") && p["kind"] != "dual")
        fail(ErrorCode::BadInput, "expected kind 'dual'");
    return SceneDual(get_num(p, "a"), get_num(p, "b"), get_num(p, "c"),
                     get_num(p, "d"));
}

AngleScene angle_scene(const json& p) {
    check_schema_version(p);
    check_fields(p, {"schema_version", "kind", "vertex", "dir1", "dir2", "interior",
                     "n", "seed"},
                 {"vertex", "dir1", "dir2", "interior"}, "angle scene");
    if (p.contains("kind") && p["kind"] != "angle")
        fail(ErrorCode::BadInput, "expected kind 'angle'");
    return AngleScene(get_pt(p, "vertex"), get_pt(p, "dir1"), get_pt(p, "dir2"),
                      get_pt(p, "interior"));
}

NormExponent norm_exponent(const json& v) {
    if (v.is_string()) {
        if (v == "inf") return NormExponent::infinity();
        fail(ErrorCode::BadInput, "p must be a number, 0, or \"inf\"");
    }
    if (!v.is_number()) fail(ErrorCode::BadInput, "p must be a number, 0, or \"inf\"");
    const double p = v.get<double>();
    if (!std::isfinite(p)) fail(ErrorCode::BadInput, "p must be finite");
    if (p == 0.0) return NormExponent::zero();
    return NormExponent::finite(p);
}

json norm_exponent_echo(NormExponent p) {
    switch (p.kind) {
        case NormExponent::Kind::Zero: return json(0.0);
        case NormExponent::Kind::Infinity: return json("inf");
        case NormExponent::Kind::Finite: return json(p.p);
    }
    return json();
}

json classification_json(const SceneDual& s) {
    const Classification cls = classify_existence(s);
    json r;
    if (cls.kind == ExistenceCase::MinExists) {
        r["case"] = "MinExists";
        r["sigma"] = std::isinf(cls.sigma) ? json("inf") : json(cls.sigma);
    } else {
        r["case"] = "InfimumOnly";
        r["sigma"] = cls.sigma;
        r["infimum"] = infimum_value(s);
        r["limit_point"] = pt({s.a, s.b});
    }
    return r;
}

json config_json(const TriangleConfig& c) {
    json r;
    r["C"] = pt(c.C); r["D"] = pt(c.D); r["E"] = pt(c.E);
    r["A"] = pt(c.A); r["B"] = pt(c.B);
    r["K"] = pt(c.K); r["L"] = pt(c.L); r["M"] = pt(c.M);
    r["A0"] = pt(c.A0); r["B0"] = pt(c.B0); r["C0"] = pt(c.C0);
    if (c.P) r["P"] = pt(*c.P);
    if (c.Q) r["Q"] = pt(*c.Q);
    return r;
}

json report_json(const OptimalityReport& rep) {
    json r;
    r["grad_norm"] = rep.grad_norm;
    r["cond1_residual"] = rep.cond1_residual;
    r["cond2_residual"] = rep.cond2_residual;
    r["coincidence"] = rep.coincidence;
    r["fd_grad_error"] = rep.fd_grad_error;
    return r;
}

json solution_json(const DualSolution& sol) {
    json r;
    if (sol.kind == ExistenceCase::MinExists) {
        r["case"] = "MinimumFound";
        r["config"] = config_json(*sol.config);
        r["value"] = sol.value;
        r["t0"] = sol.t0;
        r["report"] = report_json(*sol.report);
    } else {
        r["case"] = "InfimumOnly";
        r["limit_point"] = pt(sol.limit_point);
        r["infimum"] = sol.infimum;
    }
    return r;
}

json philo_json(const PhiloSolution& sol) {
    json r;
    r["E"] = pt(sol.E);
    r["F"] = pt(sol.F);
    r["G"] = pt(sol.G);
    r["length"] = sol.length;
    r["theta"] = sol.theta;
    r["residual"] = sol.residual;
    return r;
}

json cert_json(const Certificate& cert) {
    json r;
    json sc;
    sc["C"] = pt(cert.scene.C); sc["D"] = pt(cert.scene.D); sc["E"] = pt(cert.scene.E);
    sc["p"] = cert.scene.p;
    sc["A"] = pt(cert.scene.A); sc["B"] = pt(cert.scene.B);
    sc["K"] = pt(cert.scene.K); sc["L"] = pt(cert.scene.L); sc["M"] = pt(cert.scene.M);
    r["scene"] = sc;
    r["challenger"] = pt(cert.challenger);
    r["g_at_C"] = cert.g_at_C;
    r["g_at_C1"] = cert.g_at_C1;
    r["margin"] = cert.margin;
    r["seed"] = cert.seed;
    return r;
}

double default_abs_tol() {
    if (const char* env = std::getenv("BISECTRIX_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && std::isfinite(v) && v > 0) return v;
        fail(ErrorCode::BadInput, "BISECTRIX_TOL must be a positive number");
    }
    return 1e-10;
}

}  // namespace

json run(const json& request) {
    check_fields(request, {"command", "params"}, {"command", "params"}, "request");
    if (!request["command"].is_string())
        fail(ErrorCode::BadInput, "command must be a string");
    const std::string cmd = request["command"].get<std::string>();
    const json& p = request["params"];
    if (!p.is_object()) fail(ErrorCode::BadInput, "params must be an object");

    json report;
    report["schema_version"] = 1;
    report["command"] = cmd;
    report["input"] = p;
    report["tolerances"] = {{"abs", default_abs_tol()}, {"rel", 1e-12}};

    if (cmd == "classify") {
        report["result"] = classification_json(dual_scene(p));
    } else if (cmd == "solve-dual") {
        report["result"] = solution_json(solve_dual(dual_scene(p)));
    } else if (cmd == "solve-linf") {
        const LinfSolution sol = solve_linf(dual_scene(p));
        json r;
        r["k0"] = sol.k0;
        if (sol.kind == ExistenceCase::MinExists) {
            r["case"] = "Minimum";
            r["C"] = pt(sol.C);
            r["value"] = sol.value;
        } else {
            r["case"] = "InfimumOnly";
            r["infimum"] = sol.infimum;
        }
        report["result"] = r;
    } else if (cmd == "solve-lp") {
        const SceneDual s = dual_scene(p);
        if (!p.contains("p")) fail(ErrorCode::BadInput, "solve-lp requires 'p'");
        const NormExponent np = norm_exponent(p["p"]);
        const auto seed = static_cast<std::uint64_t>(get_int(p, "seed", 0, true));
        const int starts = static_cast<int>(get_int(p, "starts", 32));
        if (starts < 1) fail(ErrorCode::BadInput, "starts must be >= 1");
        const MinimizeResult res = numeric_minimize(s, np, starts, seed);
        json r;
        r["best"] = pt({res.best.x, res.best.y});
        r["value"] = res.value;
        r["boundary_flag"] = res.boundary_flag;
        r["p"] = norm_exponent_echo(np);
        report["result"] = r;
        report["seed"] = seed;
    } else if (cmd == "philo") {
        if (p.contains("scenario")) {
            check_fields(p, {"schema_version", "scenario"}, {"scenario"}, "philo");
            if (p["scenario"] != "incenter-345")
                fail(ErrorCode::BadInput, "unknown scenario");
            const Incenter345Report rep = philo_incenter_345();
            json r;
            r["scenario"] = "incenter-345";
            r["per_vertex"] = json::array();
            for (const auto& sol : rep.per_vertex) r["per_vertex"].push_back(philo_json(sol));
            r["shortest_index"] = rep.shortest_index;
            r["shortest_length"] = rep.shortest_length;
            report["result"] = r;
        } else if (p.contains("px") || p.contains("py") || p.contains("right_angle")) {
            check_fields(p, {"schema_version", "right_angle", "px", "py"}, {"px", "py"},
                         "philo right angle");
            const double px = get_num(p, "px"), py = get_num(p, "py");
            const RightAnglePhilo closed = philo_right_angle(px, py);
            const AngleScene scene({0, 0}, {1, 0}, {0, 1}, {px, py});
            json r = philo_json(philo_solve(scene));
            r["closed_form_length"] = closed.length;
            r["closed_form_E"] = pt(closed.E);
            r["closed_form_F"] = pt(closed.F);
            report["result"] = r;
        } else {
            report["result"] = philo_json(philo_solve(angle_scene(p)));
        }
    } else if (cmd == "problem4") {
        const AngleScene scene = angle_scene(p);
        const int n = static_cast<int>(get_int(p, "n", 10000));
        const auto seed = static_cast<std::uint64_t>(get_int(p, "seed", 0, true));
        const PhiloSolution sol = philo_solve(scene);
        const Problem4Report rep = problem4_check(scene, sol, n, seed);
        json r = philo_json(sol);
        r["min_excess"] = rep.min_excess;
        r["symmetry_residual"] = rep.symmetry_residual;
        report["result"] = r;
        report["seed"] = seed;
    } else if (cmd == "counterexample") {
        check_fields(p, {"schema_version", "p", "budget", "seed"}, {"p", "seed"},
                     "counterexample");
        const NormExponent np = norm_exponent(p["p"]);
        if (np.kind == NormExponent::Kind::Infinity)
            fail(ErrorCode::BadInput, "counterexample search supports finite p or 0");
        const auto seed = static_cast<std::uint64_t>(get_int(p, "seed", 0, true));
        const long budget = static_cast<long>(get_int(p, "budget", 100000));
        const auto cert = find_counterexample(np, budget, seed);
        json r;
        r["p"] = norm_exponent_echo(np);
        if (cert) {
            r["found"] = true;
            r["certificate"] = cert_json(*cert);
        } else {
            r["found"] = false;
            r["reason"] = "budget_exhausted";
        }
        report["result"] = r;
        report["seed"] = seed;
    } else if (cmd == "verify-identities") {
        json r;
        if (p.contains("kind") && p["kind"] == "triangle") {
            check_fields(p, {"schema_version", "kind", "C", "D", "E"}, {"C", "D", "E"},
                         "triangle scene");
            check_schema_version(p);
            const Point2 C = get_pt(p, "C"), D = get_pt(p, "D"), E = get_pt(p, "E");
            const CevianScene cs = build_cevian_scene(C, D, E, 1.0);
            const auto [s, map] = canonicalize(cs.A, cs.B, Line2(D, E), C);
            const DualSolution sol = solve_dual(s);
            if (sol.kind != ExistenceCase::MinExists)
                fail(ErrorCode::NotApplicable,
                     "triangle does not admit an attained minimum");
            r["apex_residual"] = dist(map.apply(C), sol.config->C);
            const IdentityResiduals ids = remark2_identities(*sol.config);
            json rr;
            if (ids.id1) rr["id1"] = *ids.id1;
            rr["id2"] = ids.id2; rr["id3"] = ids.id3; rr["id4"] = ids.id4;
            if (ids.id5) rr["id5"] = *ids.id5;
            rr["id6"] = ids.id6;
            r["identities"] = rr;
            r["corollary1_margin"] = corollary1_check(*sol.config);
            r["optimality"] = report_json(*sol.report);
        } else {
            const SceneDual s = dual_scene(p);
            const DualSolution sol = solve_dual(s);
            if (sol.kind != ExistenceCase::MinExists)
                fail(ErrorCode::NotApplicable,
                     "identities require an attained minimum; scene is infimum-only");
            const IdentityResiduals ids = remark2_identities(*sol.config);
            json rr;
            if (ids.id1) rr["id1"] = *ids.id1;
            rr["id2"] = ids.id2; rr["id3"] = ids.id3; rr["id4"] = ids.id4;
            if (ids.id5) rr["id5"] = *ids.id5;
            rr["id6"] = ids.id6;
            r["identities"] = rr;
            if (!s.symmetric_heights())
                r["corollary1_margin"] = corollary1_check(*sol.config);
            r["optimality"] = report_json(*sol.report);
            r["value"] = sol.value;
        }
        report["result"] = r;
    } else {
        fail(ErrorCode::BadInput, "unknown command '" + cmd + "'");
    }
    return report;
}

}  // namespace bisectrix::engine
