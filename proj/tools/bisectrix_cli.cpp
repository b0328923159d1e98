#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bisectrix.h"

using nlohmann::json;

namespace {

struct Options {
    std::optional<double> a, b, c, d;
    std::optional<double> px, py;
    std::optional<double> vx, vy, d1x, d1y, d2x, d2y, ix, iy;
    std::optional<std::string> p;
    std::optional<std::string> scenario;
    std::optional<std::string> json_in;
    std::optional<std::string> scene_file;
    std::optional<long long> seed;
    long long budget = 100000;
    long long n = 10000;
    long long starts = 32;
    std::string in_path, out_path;
    bool timing = false;
};

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_p_flag(const std::string& text) {
    if (text == "inf") return json("inf");
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return json(v);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--p must be a number, 0, or 'inf'");
    }
}

// Build the params object from flags or from a --json-in / --scene-file
// payload; the two sources are mutually exclusive for scene data.
json build_params(const std::string& cmd, const Options& opt) {
    json params;
    const auto& file = opt.json_in ? opt.json_in : opt.scene_file;
    const bool has_scene_flags =
        opt.a || opt.b || opt.c || opt.d || opt.px || opt.py || opt.vx || opt.scenario;
    if (file) {
        if (has_scene_flags)
            throw CLI::ValidationError("--json-in and scene flags are mutually exclusive");
        params = json::parse(read_input(*file));
        if (!params.is_object())
            throw CLI::ValidationError("scene file must hold a JSON object");
    } else {
        if (opt.a || opt.b || opt.c || opt.d) {
            for (auto [name, v] :
                 {std::pair{"a", opt.a}, {"b", opt.b}, {"c", opt.c}, {"d", opt.d}}) {
                if (!v) throw CLI::ValidationError(std::string("missing --") + name);
                params[name] = *v;
            }
        } else if (opt.px || opt.py) {
            if (!opt.px || !opt.py)
                throw CLI::ValidationError("right-angle mode needs --px and --py");
            params["px"] = *opt.px;
            params["py"] = *opt.py;
        } else if (opt.vx) {
            for (auto [name, v] : {std::pair{"vx", opt.vx}, {"vy", opt.vy},
                                   {"d1x", opt.d1x}, {"d1y", opt.d1y},
                                   {"d2x", opt.d2x}, {"d2y", opt.d2y},
                                   {"ix", opt.ix}, {"iy", opt.iy}}) {
                if (!v) throw CLI::ValidationError(std::string("missing --") + name);
            }
            params["vertex"] = {*opt.vx, *opt.vy};
            params["dir1"] = {*opt.d1x, *opt.d1y};
            params["dir2"] = {*opt.d2x, *opt.d2y};
            params["interior"] = {*opt.ix, *opt.iy};
        } else if (opt.scenario) {
            params["scenario"] = *opt.scenario;
        } else if (cmd != "counterexample") {
            throw CLI::ValidationError("no scene given; use flags or --json-in");
        }
    }
    if (opt.p) params["p"] = parse_p_flag(*opt.p);
    if (cmd == "solve-lp" || cmd == "problem4" || cmd == "counterexample") {
        if (!opt.seed && !params.contains("seed"))
            throw CLI::ValidationError("--seed is required for randomized commands");
    }
    if (opt.seed) params["seed"] = *opt.seed;
    if (cmd == "counterexample") params["budget"] = opt.budget;
    if (cmd == "problem4") params["n"] = opt.n;
    if (cmd == "solve-lp") params["starts"] = opt.starts;
    return params;
}

int run_command(const std::string& cmd, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    json request;
    request["command"] = cmd;
    request["params"] = build_params(cmd, opt);

    bx_report* rep = nullptr;
    const bx_status st = bx_run(request.dump().c_str(), &rep);
    int rc = static_cast<int>(st);
    if (st == BX_OK) {
        if (opt.timing) {
            auto report = json::parse(bx_report_payload(rep));
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            report["wall_time_ms"] = ms;
            std::cout << report.dump() << "\n";
        } else {
            std::cout << bx_report_payload(rep) << "\n";
        }
    } else if (st == BX_ERR_USAGE) {
        std::cerr << "error: " << bx_report_error_message(rep) << "\n";
    } else {
        json err;
        err["error"] = {{"code", bx_report_error_code(rep)},
                        {"message", bx_report_error_message(rep)}};
        std::cout << err.dump() << "\n";
    }
    bx_report_free(rep);
    return rc;
}

int run_render(const Options& opt) {
    const std::string report = read_input(opt.in_path);
    bx_report* rep = nullptr;
    const bx_status st = bx_render_svg(report.c_str(), &rep);
    int rc = static_cast<int>(st);
    if (st == BX_OK) {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) {
            bx_report_free(rep);
            return usage_error("cannot open output '" + opt.out_path + "'");
        }
        out << bx_report_payload(rep);
    } else if (st == BX_ERR_USAGE) {
        std::cerr << "error: " << bx_report_error_message(rep) << "\n";
    } else {
        json err;
        err["error"] = {{"code", bx_report_error_code(rep)},
                        {"message", bx_report_error_message(rep)}};
        std::cout << err.dump() << "\n";
    }
    bx_report_free(rep);
    return rc;
}

void add_dual_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--a", opt.a, "abscissa of A");
    sub->add_option("--b", opt.b, "ordinate of A");
    sub->add_option("--c", opt.c, "abscissa of B");
    sub->add_option("--d", opt.d, "ordinate of B");
    sub->add_option("--json-in", opt.json_in, "scene file (JSON), '-' for stdin");
}

void add_angle_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--vx", opt.vx, "vertex x");
    sub->add_option("--vy", opt.vy, "vertex y");
    sub->add_option("--d1x", opt.d1x, "first ray direction x");
    sub->add_option("--d1y", opt.d1y, "first ray direction y");
    sub->add_option("--d2x", opt.d2x, "second ray direction x");
    sub->add_option("--d2y", opt.d2y, "second ray direction y");
    sub->add_option("--ix", opt.ix, "interior point x");
    sub->add_option("--iy", opt.iy, "interior point y");
    sub->add_option("--json-in", opt.json_in, "scene file (JSON), '-' for stdin");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bisectrix: extremal line-segment configurations over a fixed line"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--timing", opt.timing, "append wall-clock time to the report");

    auto* classify = app.add_subcommand("classify", "minimum vs infimum classification");
    add_dual_flags(classify, opt);

    auto* solve_dual = app.add_subcommand("solve-dual", "minimize the length sum");
    add_dual_flags(solve_dual, opt);

    auto* solve_linf = app.add_subcommand("solve-linf", "minimize the larger length");
    add_dual_flags(solve_linf, opt);

    auto* solve_lp = app.add_subcommand("solve-lp", "derivative-free l_p minimization");
    add_dual_flags(solve_lp, opt);
    solve_lp->add_option("--p", opt.p, "exponent: number, 0, or 'inf'")->required();
    solve_lp->add_option("--seed", opt.seed, "RNG seed");
    solve_lp->add_option("--starts", opt.starts, "multi-start count");

    auto* philo = app.add_subcommand("philo", "shortest transversal through a point");
    add_angle_flags(philo, opt);
    philo->add_flag("--right-angle", "use the axis-aligned right angle");
    philo->add_option("--px", opt.px, "interior point x (right angle)");
    philo->add_option("--py", opt.py, "interior point y (right angle)");
    philo->add_option("--scenario", opt.scenario, "named scenario (incenter-345)");

    auto* problem4 = app.add_subcommand("problem4", "optimality margin sampling");
    add_angle_flags(problem4, opt);
    problem4->add_option("--n", opt.n, "number of sampled lines");
    problem4->add_option("--seed", opt.seed, "RNG seed");

    auto* ctr = app.add_subcommand("counterexample", "search for p in {0, 2}");
    ctr->add_option("--p", opt.p, "0 (geometric mean) or 2 (squared sum)")->required();
    ctr->add_option("--seed", opt.seed, "RNG seed");
    ctr->add_option("--budget", opt.budget, "probe budget");

    auto* verify = app.add_subcommand("verify-identities",
                                      "triangle identity and optimality residuals");
    verify->add_option("--scene-file", opt.scene_file, "scene file (JSON), '-' for stdin");
    add_dual_flags(verify, opt);

    auto* render = app.add_subcommand("render", "render a report as SVG");
    render->add_option("--in", opt.in_path, "report JSON, '-' for stdin")->required();
    render->add_option("--out", opt.out_path, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return 0;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (render->parsed()) return run_render(opt);
        if (ctr->parsed() && opt.p && *opt.p != "0" && *opt.p != "2")
            return usage_error("counterexample supports --p 0 or --p 2");
        for (auto [sub, name] : {std::pair<CLI::App*, const char*>{classify, "classify"},
                                 {solve_dual, "solve-dual"},
                                 {solve_linf, "solve-linf"},
                                 {solve_lp, "solve-lp"},
                                 {philo, "philo"},
                                 {problem4, "problem4"},
                                 {ctr, "counterexample"},
                                 {verify, "verify-identities"}}) {
            if (sub->parsed()) return run_command(name, opt);
        }
    } catch (const CLI::ValidationError& e) {
        return usage_error(e.what());
    } catch (const nlohmann::json::exception& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }
    return usage_error("no subcommand given");
}
