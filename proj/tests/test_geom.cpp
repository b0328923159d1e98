#include <cmath>
#include <random>

#include <doctest.h>

#include "bisectrix/dual.hpp"
#include "bisectrix/geom.hpp"

using namespace bisectrix;

namespace {

Point2 random_point(std::mt19937_64& rng, double span = 10.0) {
    std::uniform_real_distribution<double> u(-span, span);
    return {u(rng), u(rng)};
}

}  // namespace

TEST_CASE("line intersection basics") {
    const Line2 xaxis({0, 0}, {1, 0});
    const Line2 yaxis({0, 0}, {0, 1});
    const Point2 o = intersect_lines(xaxis, yaxis);
    CHECK(o.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(o.y == doctest::Approx(0.0).epsilon(1e-14));

    const Point2 p = intersect_lines(Line2({0, 2}, {-1, 1}), xaxis);
    CHECK(p.x == doctest::Approx(-2.0));
    CHECK(p.y == doctest::Approx(0.0));

    // Solved by hand from the 2x2 linear system.
    const Point2 q = intersect_lines(Line2({5, 0}, {0, 10}), Line2({0, 0}, {2, 1}));
    CHECK(q.x == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(q.y == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(intersect_lines(Line2({0, 0}, {1, 1}), Line2({0, 1}, {1, 2})),
                    Error);
}

TEST_CASE("intersection lies on both carriers") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 500) {
        const Point2 p1 = random_point(rng), p2 = random_point(rng);
        const Point2 p3 = random_point(rng), p4 = random_point(rng);
        if (dist(p1, p2) < 1e-3 || dist(p3, p4) < 1e-3) continue;
        const Line2 l1(p1, p2), l2(p3, p4);
        Point2 x;
        try {
            x = intersect_lines(l1, l2);
        } catch (const Error&) {
            continue;
        }
        const double scale = 10.0 + norm(x);
        CHECK(std::abs(cross(l1.direction(), x - l1.p)) / norm(l1.direction()) <
              1e-10 * scale);
        CHECK(std::abs(cross(l2.direction(), x - l2.p)) / norm(l2.direction()) <
              1e-10 * scale);
        ++done;
    }
}

TEST_CASE("perpendicular foot") {
    const Point2 f1 = perp_foot({1, 1}, Line2({0, 0}, {1, 0}));
    CHECK(f1.x == doctest::Approx(1.0));
    CHECK(f1.y == doctest::Approx(0.0));

    // Projection formula by hand; point L of the symmetric configuration.
    const Point2 f2 = perp_foot({0, 0}, Line2({0, 2}, {-2, 0}));
    CHECK(f2.x == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(f2.y == doctest::Approx(1.0).epsilon(1e-13));

    const Point2 f3 = perp_foot({0, 0}, Line2({5, 0}, {0, 10}));
    CHECK(f3.x == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(f3.y == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("perp_foot is idempotent") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const Point2 p = random_point(rng);
        const Point2 q1 = random_point(rng), q2 = random_point(rng);
        if (dist(q1, q2) < 1e-3) continue;
        const Line2 l(q1, q2);
        const Point2 f = perp_foot(p, l);
        const Point2 ff = perp_foot(f, l);
        CHECK(dist(f, ff) < 1e-12 * (1.0 + norm(f)));
        CHECK(std::abs(dot(p - f, l.direction())) < 1e-10 * (1.0 + norm(p)) * norm(l.direction()));
    }
}

TEST_CASE("angle bisector foot") {
    const Point2 u1 = angle_bisector_foot({0, 2}, {-2, 0}, {2, 0});
    CHECK(u1.x == doctest::Approx(0.0));
    CHECK(u1.y == doctest::Approx(0.0));

    // Ratio formula U = d + (|dc|/(|dc|+|ce|)) (e - d).
    const Point2 u2 = angle_bisector_foot({0, 3}, {-1, 0}, {3, 0});
    const double dc = std::sqrt(10.0), ce = std::sqrt(18.0);
    CHECK(dist(u2, {-1, 0}) / dist(u2, {3, 0}) == doctest::Approx(dc / ce).epsilon(1e-12));

    CHECK_THROWS_AS(angle_bisector_foot({0, 0}, {1, 1}, {2, 2}), Error);
}

TEST_CASE("angle bisector ratio property and symmetry") {
    std::mt19937_64 rng(13);
    int done = 0;
    while (done < 1000) {
        const Point2 c = random_point(rng), d = random_point(rng), e = random_point(rng);
        if (collinear(c, d, e)) continue;
        const Point2 u = angle_bisector_foot(c, d, e);
        CHECK(std::abs(dist(d, u) * dist(c, e) - dist(u, e) * dist(d, c)) <
              1e-12 * (1.0 + dist(d, u) * dist(c, e)));
        const Point2 u_swapped = angle_bisector_foot(c, e, d);
        CHECK(dist(u, u_swapped) < 1e-10 * (1.0 + norm(u)));
        ++done;
    }
}

TEST_CASE("circumradius and area") {
    auto [r1, a1] = circum_area({0, 0}, {4, 0}, {0, 3});
    CHECK(r1 == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(a1 == doctest::Approx(6.0).epsilon(1e-13));

    auto [r2, a2] = circum_area({0, 2}, {-2, 0}, {2, 0});
    CHECK(r2 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(a2 == doctest::Approx(4.0).epsilon(1e-13));

    auto [r3, a3] = circum_area({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0});
    CHECK(r3 == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(a3 == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));

    CHECK_THROWS_AS(circum_area({0, 0}, {1, 0}, {2, 0}), Error);
}

TEST_CASE("canonicalize: identity on canonical input") {
    const Line2 axis({0, 0}, {1, 0});
    auto [s, map] = canonicalize({-1, 1}, {1, 1}, axis, {0, 5});
    CHECK(s.a == doctest::Approx(-1.0));
    CHECK(s.b == doctest::Approx(1.0));
    CHECK(s.c == doctest::Approx(1.0));
    CHECK(s.d == doctest::Approx(1.0));
    CHECK(!map.reflection);
    CHECK(dist(map.apply({0.3, 0.7}), {0.3, 0.7}) < 1e-13);
}

TEST_CASE("canonicalize: mirrored scene sets the reflection flag") {
    const Line2 axis({0, 0}, {1, 0});
    auto [s, map] = canonicalize({2, 3}, {1, 1}, axis, {0, 5});
    CHECK(s.a < s.c);
    CHECK(s.b >= s.d);
    CHECK(map.reflection);
    // Images of the original points under the map agree with the scene.
    const Point2 imA = map.apply({2, 3});
    CHECK(imA.x == doctest::Approx(s.a));
    CHECK(imA.y == doctest::Approx(s.b));
}

TEST_CASE("canonicalize: oblique line preserves distances") {
    const Line2 l({1, 0}, {0, 1});  // x + y = 1
    const Point2 pA{2, 2}, pB{3, 1};
    auto [s, map] = canonicalize(pA, pB, l, {4, 4});
    const Point2 a{s.a, s.b}, b{s.c, s.d};
    CHECK(std::abs(dist(a, b) - dist(pA, pB)) < 1e-12);
    const double dA = std::abs(pA.x + pA.y - 1) / std::sqrt(2.0);
    const double dB = std::abs(pB.x + pB.y - 1) / std::sqrt(2.0);
    CHECK(std::abs(std::min(s.b, s.d) - std::min(dA, dB)) < 1e-12);
    CHECK(std::abs(std::max(s.b, s.d) - std::max(dA, dB)) < 1e-12);
    // Round trip through the inverse map; equal heights allow either labeling.
    const double back = dist(map.apply_inverse(a), pA) + dist(map.apply_inverse(b), pB);
    const double back_swapped =
        dist(map.apply_inverse(a), pB) + dist(map.apply_inverse(b), pA);
    CHECK(std::min(back, back_swapped) < 1e-11);
}

TEST_CASE("canonicalize: error cases") {
    const Line2 axis({0, 0}, {1, 0});
    CHECK_THROWS_AS(canonicalize({0, 0}, {1, 1}, axis, {0, 5}), Error);   // on line
    CHECK_THROWS_AS(canonicalize({0, 1}, {1, -1}, axis, {0, 5}), Error);  // opposite
    CHECK_THROWS_AS(canonicalize({0, 1}, {0, 1}, axis, {0, 5}), Error);   // coincide
    CHECK_THROWS_AS(canonicalize({0, 2}, {0, 1}, axis, {0, 5}), Error);   // vertical

    try {
        canonicalize({0, 2}, {0, 1}, axis, {0, 5});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::VerticalPair);
    }
}

TEST_CASE("canonicalize round trip on random scenes") {
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 300) {
        const Point2 lp = random_point(rng), lq = random_point(rng);
        if (dist(lp, lq) < 1e-2) continue;
        const Line2 l(lp, lq);
        const Point2 pA = random_point(rng), pB = random_point(rng);
        const double sA = cross(l.direction(), pA - lp);
        const double sB = cross(l.direction(), pB - lp);
        if (sA * sB <= 0 || std::abs(sA) < 1e-4 || std::abs(sB) < 1e-4) continue;
        try {
            auto [s, map] = canonicalize(pA, pB, l, pA);
            CHECK(s.a < s.c);
            CHECK(s.b >= s.d);
            CHECK(s.d > 0);
            const Point2 a{s.a, s.b}, b{s.c, s.d};
            const double back = dist(map.apply_inverse(a), pA) + dist(map.apply_inverse(b), pB);
            const double back_swapped =
                dist(map.apply_inverse(a), pB) + dist(map.apply_inverse(b), pA);
            CHECK(std::min(back, back_swapped) < 1e-11 * (1.0 + norm(pA) + norm(pB)));
            CHECK(std::abs(dist(a, b) - dist(pA, pB)) < 1e-12 * (1.0 + dist(pA, pB)));
            ++done;
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::VerticalPair);
        }
    }
}

TEST_CASE("rigid map preserves distances") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ua(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        RigidMap m;
        m.rotation = ua(rng);
        m.translation = random_point(rng);
        m.reflection = (i % 2 == 0);
        const Point2 p = random_point(rng), q = random_point(rng);
        CHECK(std::abs(dist(m.apply(p), m.apply(q)) - dist(p, q)) <
              1e-14 * (1.0 + dist(p, q)));
        CHECK(dist(m.apply_inverse(m.apply(p)), p) < 1e-13 * (1.0 + norm(p)));
    }
}
