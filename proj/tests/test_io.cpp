#include <cmath>
#include <cstdlib>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "bisectrix/engine.hpp"
#include "bisectrix/error.hpp"

using nlohmann::json;
using bisectrix::Error;
using bisectrix::ErrorCode;

namespace {

json req(const std::string& cmd, json params) {
    return json{{"command", cmd}, {"params", std::move(params)}};
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("classify reports: frozen scenes") {
    const json left = bisectrix::engine::run(
        req("classify", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.1}}));
    CHECK(left["command"] == "classify");
    CHECK(left["schema_version"] == 1);
    CHECK(left["result"]["case"] == "InfimumOnly");
    CHECK(left["result"]["sigma"].get<double>() < 0);
    CHECK(left["result"]["infimum"].get<double>() ==
          doctest::Approx(0.3 * (1.0 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(left["result"]["limit_point"][0] == doctest::Approx(0.1));
    CHECK(left["tolerances"]["abs"] == doctest::Approx(1e-10));
    CHECK(left["tolerances"]["rel"] == doctest::Approx(1e-12));
    // Input echo round-trips.
    CHECK(left["input"]["a"] == doctest::Approx(0.1));

    const json right = bisectrix::engine::run(
        req("classify", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.2}}));
    CHECK(right["result"]["case"] == "MinExists");
    CHECK(right["result"]["sigma"].get<double>() > 0);
}

TEST_CASE("solve-dual report: symmetric frozen scene") {
    const json rep = bisectrix::engine::run(
        req("solve-dual", {{"a", -1}, {"b", 1}, {"c", 1}, {"d", 1}}));
    CHECK(rep["result"]["case"] == "MinimumFound");
    CHECK(rep["result"]["value"].get<double>() ==
          doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-10));
    CHECK(rep["result"]["config"]["C"][0].get<double>() ==
          doctest::Approx(0.0).epsilon(1e-10));
    CHECK(rep["result"]["config"]["C"][1].get<double>() ==
          doctest::Approx(2.0).epsilon(1e-10));
    // Symmetric configuration: no P, but Q is also absent only when ML is
    // horizontal, which holds here.
    CHECK(!rep["result"]["config"].contains("P"));
    CHECK(rep["result"]["report"]["grad_norm"].get<double>() < 1e-8);

    // Serialized report parses back to the same JSON.
    const json back = json::parse(rep.dump());
    CHECK(back == rep);
}

TEST_CASE("solve-dual report: infimum-only scene") {
    const json rep = bisectrix::engine::run(
        req("solve-dual", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.1}}));
    CHECK(rep["result"]["case"] == "InfimumOnly");
    CHECK(rep["result"]["infimum"].get<double>() ==
          doctest::Approx(0.3 * (1.0 + std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("schema violations are rejected") {
    CHECK_THROWS_AS(bisectrix::engine::run(json{{"command", "classify"}}), Error);
    CHECK_THROWS_AS(
        bisectrix::engine::run(req("classify", {{"a", 1}, {"b", 2}, {"c", 3}})),
        Error);
    // Unknown fields rejected.
    CHECK_THROWS_AS(
        bisectrix::engine::run(req("classify", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3},
                                                {"d", 0.1}, {"bogus", 1}})),
        Error);
    // Unsupported schema version.
    CHECK_THROWS_AS(
        bisectrix::engine::run(req("classify", {{"schema_version", 2}, {"a", 0.1},
                                                {"b", 0.3}, {"c", 0.3}, {"d", 0.1}})),
        Error);
    // Unknown command.
    CHECK_THROWS_AS(bisectrix::engine::run(req("frobnicate", json::object())), Error);
    // Non-numeric coordinate.
    CHECK_THROWS_AS(
        bisectrix::engine::run(req("classify", {{"a", "x"}, {"b", 0.3}, {"c", 0.3},
                                                {"d", 0.1}})),
        Error);
    try {
        bisectrix::engine::run(req("classify", {{"a", 1}}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadInput);
    }
}

TEST_CASE("solve-linf report") {
    const json rep = bisectrix::engine::run(
        req("solve-linf", {{"a", 0}, {"b", 1.1}, {"c", 2}, {"d", 1}}));
    CHECK(rep["result"]["case"] == "Minimum");
    CHECK(rep["result"]["k0"].get<double>() ==
          doctest::Approx(std::cbrt(2.1 / 2.0)).epsilon(1e-13));
    CHECK(rep["result"].contains("C"));
    CHECK(rep["result"]["value"].get<double>() > 0);
}

TEST_CASE("solve-lp report is seed-deterministic") {
    const json params{{"a", 0}, {"b", 1.1}, {"c", 2}, {"d", 1},
                      {"p", 1.0}, {"seed", 11}, {"starts", 8}};
    const json r1 = bisectrix::engine::run(req("solve-lp", params));
    const json r2 = bisectrix::engine::run(req("solve-lp", params));
    CHECK(r1.dump() == r2.dump());
    CHECK(r1["seed"] == 11);
    CHECK(r1["result"]["p"] == doctest::Approx(1.0));
    CHECK(r1["result"]["boundary_flag"] == false);

    // Missing seed is a usage error.
    CHECK_THROWS_AS(
        bisectrix::engine::run(req("solve-lp", {{"a", 0}, {"b", 1.1}, {"c", 2},
                                                {"d", 1}, {"p", 1.0}})),
        Error);
    // "inf" exponent accepted and echoed.
    const json rinf = bisectrix::engine::run(
        req("solve-lp", {{"a", 0}, {"b", 1.1}, {"c", 2}, {"d", 1},
                         {"p", "inf"}, {"seed", 3}, {"starts", 8}}));
    CHECK(rinf["result"]["p"] == "inf");
}

TEST_CASE("philo reports") {
    const json ra = bisectrix::engine::run(req("philo", {{"px", 1.0}, {"py", 8.0}}));
    CHECK(ra["result"]["closed_form_length"].get<double>() ==
          doctest::Approx(5.0 * std::sqrt(5.0)).epsilon(1e-12));
    CHECK(ra["result"]["length"].get<double>() ==
          doctest::Approx(5.0 * std::sqrt(5.0)).epsilon(1e-10));
    CHECK(ra["result"]["closed_form_E"][0] == doctest::Approx(5.0));
    CHECK(ra["result"]["closed_form_F"][1] == doctest::Approx(10.0));

    const json rg = bisectrix::engine::run(
        req("philo", {{"vertex", {0, 0}}, {"dir1", {1, 0}}, {"dir2", {0, 1}},
                      {"interior", {1, 8}}}));
    CHECK(rg["result"]["length"].get<double>() ==
          doctest::Approx(5.0 * std::sqrt(5.0)).epsilon(1e-10));

    const json rs = bisectrix::engine::run(req("philo", {{"scenario", "incenter-345"}}));
    CHECK(rs["result"]["per_vertex"].size() == 3);
    CHECK(rs["result"]["shortest_length"].get<double>() > 0);
    CHECK_THROWS_AS(bisectrix::engine::run(req("philo", {{"scenario", "nope"}})), Error);
}

TEST_CASE("problem4 report") {
    const json rep = bisectrix::engine::run(
        req("problem4", {{"vertex", {0, 0}}, {"dir1", {1, 0}}, {"dir2", {0, 1}},
                         {"interior", {1, 2}}, {"n", 500}, {"seed", 4}}));
    CHECK(rep["result"]["min_excess"].get<double>() > 0);
    CHECK(rep["result"]["symmetry_residual"].get<double>() < 1e-7);
    CHECK(rep["seed"] == 4);
}

TEST_CASE("counterexample reports") {
    const json hit = bisectrix::engine::run(
        req("counterexample", {{"p", 2.0}, {"seed", 1}, {"budget", 100000}}));
    CHECK(hit["result"]["found"] == true);
    CHECK(hit["result"]["certificate"]["margin"].get<double>() > 0);
    CHECK(hit["result"]["certificate"]["seed"] == 1);

    const json miss = bisectrix::engine::run(
        req("counterexample", {{"p", 1.0}, {"seed", 1}, {"budget", 2000}}));
    CHECK(miss["result"]["found"] == false);
    CHECK(miss["result"]["reason"] == "budget_exhausted");

    CHECK_THROWS_AS(
        bisectrix::engine::run(req("counterexample", {{"p", "inf"}, {"seed", 1}})),
        Error);
}

TEST_CASE("verify-identities: dual scene and triangle scene") {
    const json rd = bisectrix::engine::run(
        req("verify-identities", {{"a", 0}, {"b", 1.1}, {"c", 2}, {"d", 1}}));
    for (const char* id : {"id1", "id2", "id3", "id4", "id5", "id6"})
        CHECK(rd["result"]["identities"][id].get<double>() < 1e-9);
    CHECK(rd["result"]["corollary1_margin"].get<double>() > 0);
    CHECK(rd["result"]["optimality"]["grad_norm"].get<double>() < 1e-8);

    // Infimum-only scene: requesting the minimum is a domain error.
    CHECK_THROWS_AS(
        bisectrix::engine::run(
            req("verify-identities", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.1}})),
        Error);
    try {
        bisectrix::engine::run(
            req("verify-identities", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.1}}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotApplicable);
    }

    // Triangle form: a scalene triangle built from its own optimal frame.
    const json rt = bisectrix::engine::run(
        req("verify-identities", {{"kind", "triangle"}, {"C", {0.6, 1.7}},
                                  {"D", {-1.0, 0.0}}, {"E", {2.0, 0.0}}}));
    CHECK(rt["result"]["apex_residual"].get<double>() < 1e-6);
    CHECK(rt["result"]["identities"]["id2"].get<double>() < 1e-9);
    CHECK(rt["result"]["optimality"]["grad_norm"].get<double>() < 1e-8);
}

TEST_CASE("svg: symmetric dual solution structure") {
    const json rep = bisectrix::engine::run(
        req("solve-dual", {{"a", -1}, {"b", 1}, {"c", 1}, {"d", 1}}));
    const std::string svg = bisectrix::engine::render_svg(rep);
    CHECK(svg.find("<svg") == 0);
    CHECK(count_occurrences(svg, "<line") == 1);
    CHECK(count_occurrences(svg, "<circle") == 11);
    for (const char* name : {">C<", ">D<", ">E<", ">A<", ">B<", ">K<", ">L<",
                             ">M<", ">A0<", ">B0<", ">C0<"})
        CHECK(svg.find(name) != std::string::npos);
    CHECK(svg.find("-0.000000") == std::string::npos);

    // Determinism.
    CHECK(bisectrix::engine::render_svg(rep) == svg);
}

TEST_CASE("svg: infimum corner glyph and philo scene") {
    const json cls = bisectrix::engine::run(
        req("classify", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.1}}));
    const std::string svg = bisectrix::engine::render_svg(cls);
    CHECK(svg.find("fill=\"red\"") != std::string::npos);  // corner diamond
    CHECK(svg.find(">corner<") != std::string::npos);

    const json ph = bisectrix::engine::run(req("philo", {{"px", 1.0}, {"py", 8.0}}));
    const std::string psvg = bisectrix::engine::render_svg(ph);
    CHECK(psvg.find(">G<") != std::string::npos);
    CHECK(count_occurrences(psvg, "<line") == 1);

    // Non-geometric reports are rejected.
    const json ver = bisectrix::engine::run(
        req("counterexample", {{"p", 1.0}, {"seed", 1}, {"budget", 100}}));
    CHECK_THROWS_AS(bisectrix::engine::render_svg(ver), Error);
    CHECK_THROWS_AS(bisectrix::engine::render_svg(json::object()), Error);
}

TEST_CASE("BISECTRIX_TOL overrides the default tolerance") {
    setenv("BISECTRIX_TOL", "1e-8", 1);
    const json rep = bisectrix::engine::run(
        req("classify", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.2}}));
    CHECK(rep["tolerances"]["abs"] == doctest::Approx(1e-8));
    setenv("BISECTRIX_TOL", "bogus", 1);
    CHECK_THROWS_AS(
        bisectrix::engine::run(
            req("classify", {{"a", 0.1}, {"b", 0.3}, {"c", 0.3}, {"d", 0.2}})),
        Error);
    unsetenv("BISECTRIX_TOL");
}
