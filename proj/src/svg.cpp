#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bisectrix/engine.hpp"
#include "bisectrix/error.hpp"

namespace bisectrix::engine {

using nlohmann::json;

namespace {

struct Labeled {
    std::string name;
    double x, y;
    bool corner_glyph = false;  // distinct marker for the infimum corner
    bool right_angle = false;   // perpendicular-foot marker
};

struct Seg {
    double x1, y1, x2, y2;
    bool is_base = false;  // the fixed line DE, drawn as the single <line>
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    // Normalize negative zero so identical scenes render identically.
    if (std::string(buf) == "-0.000000") return "0.000000";
    return buf;
}

std::pair<double, double> point_from(const json& j) {
    return {j[0].get<double>(), j[1].get<double>()};
}

struct Scene {
    std::vector<Labeled> points;
    std::vector<Seg> segs;

    void add_point(const json& payload, const std::string& key, bool right_angle = false) {
        if (!payload.contains(key)) return;
        auto [x, y] = point_from(payload[key]);
        points.push_back({key, x, y, false, right_angle});
    }
    void add_seg(const json& payload, const std::string& a, const std::string& b) {
        if (!payload.contains(a) || !payload.contains(b)) return;
        auto [x1, y1] = point_from(payload[a]);
        auto [x2, y2] = point_from(payload[b]);
        segs.push_back({x1, y1, x2, y2, false});
    }
};

Scene build_dual_config_scene(const json& cfg) {
    Scene sc;
    for (const char* name : {"C", "D", "E", "A", "B", "K"}) sc.add_point(cfg, name);
    for (const char* name : {"L", "M", "A0", "B0", "C0"}) sc.add_point(cfg, name, true);
    sc.add_point(cfg, "P");
    sc.add_point(cfg, "Q");
    auto [dx, dy] = point_from(cfg["D"]);
    auto [ex, ey] = point_from(cfg["E"]);
    sc.segs.push_back({dx, dy, ex, ey, true});
    sc.add_seg(cfg, "D", "C");
    sc.add_seg(cfg, "C", "E");
    sc.add_seg(cfg, "C", "K");
    sc.add_seg(cfg, "K", "L");
    sc.add_seg(cfg, "K", "M");
    return sc;
}

Scene build_scene(const json& report) {
    const std::string cmd = report.value("command", "");
    const json& input = report["input"];
    const json& result = report["result"];
    Scene sc;

    if (cmd == "solve-dual" || cmd == "verify-identities") {
        if (result.contains("config")) return build_dual_config_scene(result["config"]);
        // InfimumOnly never reaches here (solve-dual handles it below).
    }

    if (cmd == "solve-dual" || cmd == "classify" || cmd == "solve-linf") {
        const double a = input["a"].get<double>(), b = input["b"].get<double>();
        const double c = input["c"].get<double>(), d = input["d"].get<double>();
        sc.points.push_back({"A", a, b});
        sc.points.push_back({"B", c, d});
        const double margin = std::max(c - a, b);
        sc.segs.push_back({a - margin, 0.0, c + margin, 0.0, true});
        if (result.contains("limit_point")) {
            auto [lx, ly] = point_from(result["limit_point"]);
            sc.points.push_back({"corner", lx, ly, true});
        }
        if (result.contains("C")) {
            auto [cx, cy] = point_from(result["C"]);
            sc.points.push_back({"C", cx, cy});
            sc.segs.push_back({cx, cy, a, b, false});
            sc.segs.push_back({cx, cy, c, d, false});
        }
        return sc;
    }

    if (cmd == "philo" || cmd == "problem4") {
        if (!result.contains("E"))
            fail(ErrorCode::NonGeometricReport, "philo report without geometry");
        auto [ex, ey] = point_from(result["E"]);
        auto [fx, fy] = point_from(result["F"]);
        auto [gx, gy] = point_from(result["G"]);
        sc.points.push_back({"E", ex, ey});
        sc.points.push_back({"F", fx, fy});
        sc.points.push_back({"G", gx, gy, false, true});
        if (input.contains("interior")) {
            auto [ix, iy] = point_from(input["interior"]);
            auto [vx, vy] = point_from(input["vertex"]);
            sc.points.push_back({"D", ix, iy});
            sc.points.push_back({"B", vx, vy});
            sc.segs.push_back({vx, vy, ex, ey, false});
            sc.segs.push_back({vx, vy, fx, fy, false});
            sc.segs.push_back({vx, vy, gx, gy, false});
        } else if (input.contains("px")) {
            const double px = input["px"].get<double>(), py = input["py"].get<double>();
            sc.points.push_back({"D", px, py});
            sc.points.push_back({"B", 0.0, 0.0});
            sc.segs.push_back({0.0, 0.0, ex, ey, false});
            sc.segs.push_back({0.0, 0.0, fx, fy, false});
        }
        sc.segs.push_back({ex, ey, fx, fy, true});
        return sc;
    }

    fail(ErrorCode::NonGeometricReport,
         "report for command '" + cmd + "' has no geometric payload");
}

}  // namespace

std::string render_svg(const json& report) {
    if (!report.is_object() || !report.contains("command") ||
        !report.contains("result") || !report.contains("input"))
        fail(ErrorCode::NonGeometricReport, "not a report object");
    const Scene sc = build_scene(report);

    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    auto grow = [&](double x, double y) {
        minx = std::min(minx, x); maxx = std::max(maxx, x);
        miny = std::min(miny, y); maxy = std::max(maxy, y);
    };
    for (const auto& p : sc.points) grow(p.x, p.y);
    for (const auto& s : sc.segs) { grow(s.x1, s.y1); grow(s.x2, s.y2); }

    const double w = std::max(maxx - minx, 1e-6), h = std::max(maxy - miny, 1e-6);
    const double m = 0.1 * std::max(w, h);
    minx -= m; maxx += m; miny -= m; maxy += m;

    // Flip y so "up" in the scene is up on the page.
    auto X = [&](double x) { return x; };
    auto Y = [&](double y) { return maxy + miny - y; };
    const double r = 0.01 * std::max(w, h);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
    out += fmt(minx) + " " + fmt(miny) + " " + fmt(maxx - minx) + " " +
           fmt(maxy - miny) + "\">\n";

    for (const auto& s : sc.segs) {
        if (s.is_base) {
            out += "  <line x1=\"" + fmt(X(s.x1)) + "\" y1=\"" + fmt(Y(s.y1)) +
                   "\" x2=\"" + fmt(X(s.x2)) + "\" y2=\"" + fmt(Y(s.y2)) +
                   "\" stroke=\"black\" stroke-width=\"" + fmt(0.3 * r) + "\"/>\n";
        } else {
            out += "  <path d=\"M " + fmt(X(s.x1)) + " " + fmt(Y(s.y1)) + " L " +
                   fmt(X(s.x2)) + " " + fmt(Y(s.y2)) +
                   "\" stroke=\"gray\" stroke-width=\"" + fmt(0.2 * r) +
                   "\" fill=\"none\"/>\n";
        }
    }
    for (const auto& p : sc.points) {
        if (p.corner_glyph) {
            // Diamond glyph marking the unattained infimum corner.
            out += "  <path d=\"M " + fmt(X(p.x)) + " " + fmt(Y(p.y) - 1.6 * r) +
                   " L " + fmt(X(p.x) + 1.6 * r) + " " + fmt(Y(p.y)) + " L " +
                   fmt(X(p.x)) + " " + fmt(Y(p.y) + 1.6 * r) + " L " +
                   fmt(X(p.x) - 1.6 * r) + " " + fmt(Y(p.y)) +
                   " Z\" fill=\"red\"/>\n";
        } else {
            out += "  <circle cx=\"" + fmt(X(p.x)) + "\" cy=\"" + fmt(Y(p.y)) +
                   "\" r=\"" + fmt(p.right_angle ? 0.7 * r : r) + "\" fill=\"" +
                   (p.right_angle ? "steelblue" : "black") + "\"/>\n";
        }
        if (p.right_angle) {
            // Small square marker at a perpendicular foot.
            out += "  <path d=\"M " + fmt(X(p.x) - r) + " " + fmt(Y(p.y) - r) +
                   " L " + fmt(X(p.x) + r) + " " + fmt(Y(p.y) - r) + " L " +
                   fmt(X(p.x) + r) + " " + fmt(Y(p.y) + r) + " L " +
                   fmt(X(p.x) - r) + " " + fmt(Y(p.y) + r) +
                   " Z\" stroke=\"steelblue\" stroke-width=\"" + fmt(0.15 * r) +
                   "\" fill=\"none\"/>\n";
        }
        out += "  <text x=\"" + fmt(X(p.x) + 1.5 * r) + "\" y=\"" +
               fmt(Y(p.y) - 1.5 * r) + "\" font-size=\"" + fmt(4.0 * r) + "\">" +
               p.name + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace bisectrix::engine
