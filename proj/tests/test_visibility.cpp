#include "doctest.h"

#include <random>

#include "polyvis/oracle.hpp"
#include "polyvis/visibility.hpp"

using namespace polyvis;

namespace {

Point h(long x2, long y2) { return Point(Rational(x2, 2), Rational(y2, 2)); }

Trajectory traj(std::vector<Point> pts) { return Trajectory(std::move(pts)); }

}  // namespace

TEST_CASE("visible interval of a host segment") {
    const auto u = fixtures::upoly();
    auto vi = visible_interval(u, h(1, 2), Segment(h(19, 1), h(19, 18)));
    REQUIRE_FALSE(vi.empty);
    CHECK(vi.lo == 0);
    // grazing line through (8,2) meets x = 9.5 at y = 11/5
    CHECK(vi.hi == Rational(1, 5));
    CHECK(Segment(h(19, 1), h(19, 18)).at(vi.hi) == Point(Rational(19, 2), Rational(11, 5)));
    CHECK(vi.hi_pivot.kind == Pivot::Kind::vertex);
    CHECK(vi.hi_pivot.point == Point(8, 2));
    CHECK(vi.lo_pivot.kind == Pivot::Kind::fixed);

    auto none = visible_interval(u, h(1, 18), Segment(h(19, 8), h(19, 18)));
    CHECK(none.empty);
    auto all = visible_interval(fixtures::square(), {5, 5}, Segment({1, 1}, {9, 1}));
    CHECK(all.lo == 0);
    CHECK(all.hi == 1);
}

TEST_CASE("visible interval handles exits through vertices only") {
    // Notch open to the outside; the top line passes over it.
    SimplePolygon notch({{0, 0}, {10, 0}, {10, 10}, {6, 10}, {5, 5}, {4, 10}, {0, 10}});
    auto vi = visible_interval(notch, {3, 10}, Segment({7, 9}, {7, 10}));
    CHECK(vi.empty);
    auto on_line = visible_interval(notch, {1, 10}, Segment({7, 10}, {9, 10}));
    CHECK(on_line.empty);
    auto partial = visible_interval(notch, {1, 10}, Segment({2, 10}, {9, 10}));
    REQUIRE_FALSE(partial.empty);
    CHECK(partial.lo == 0);
    CHECK(Segment({2, 10}, {9, 10}).at(partial.hi) == Point(4, 10));
}

TEST_CASE("visible interval agrees with sampling on random scenes") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto poly = generators::random_polygon(seed, 20);
        for (int k = 0; k < 5; ++k) {
            Point v = generators::random_interior_point(poly, rng);
            auto [host, unused] = generators::random_segment_pair(poly, rng);
            auto vi = visible_interval(poly, v, host);
            for (int i = 0; i <= 64; ++i) {
                Rational t(i, 64);
                bool inside = !vi.empty && t >= vi.lo && t <= vi.hi;
                CHECK(inside == sees(poly, v, host.at(t)));
            }
            if (!vi.empty) {
                CHECK(sees(poly, v, host.at(vi.lo)));
                CHECK(sees(poly, v, host.at(vi.hi)));
            }
        }
    }
}

TEST_CASE("visibility polygons on fixtures") {
    auto sq = visibility_polygon(fixtures::square(), {5, 5});
    CHECK(sq.region.size() == 4);
    CHECK(sq.area2() == 200);

    const auto u = fixtures::upoly();
    auto vp = visibility_polygon(u, {5, 1});
    CHECK(vp.area2() == oracle_visibility_area2(u, {5, 1}));
    CHECK(vp.contains(Point(0, Rational(8, 3))));
    CHECK(vp.contains(Point(10, Rational(8, 3))));
    CHECK_FALSE(vp.contains(Point(1, 3)));
    CHECK(vp.region.size() == 6);

    auto arm = visibility_polygon(u, h(1, 18));
    CHECK(arm.area2() == oracle_visibility_area2(u, h(1, 18)));
    for (const Point& p : arm.region)
        CHECK(p.approx_x() < 8.0);
    CHECK_FALSE(arm.contains(Point(9, 9)));
    CHECK_THROWS_AS(visibility_polygon(u, Point(5, 5)), std::domain_error);
}

TEST_CASE("visibility polygon area equals the sweep oracle") {
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto poly = generators::random_polygon(seed, 24);
        PathFinder pf(poly);
        std::vector<Point> viewers{generators::random_interior_point(poly, rng), poly.vertex(0), poly.vertex(3),
                                   lerp(poly.vertex(1), poly.vertex(2), Rational(1, 3))};
        for (const Point& p : viewers) {
            auto vp = visibility_polygon(pf, p);
            CHECK(vp.area2() == oracle_visibility_area2(poly, p));
            for (const Point& w : vp.region)
                CHECK(sees(poly, p, w));
        }
    }
}

TEST_CASE("ray shooting") {
    auto a = ray_shoot(fixtures::square(), {5, 5}, 1, 0);
    CHECK(a.hit == Point(10, 5));
    CHECK(a.edge == 1);
    const auto u = fixtures::upoly();
    auto b = ray_shoot(u, h(1, 6), 1, 0);
    CHECK(b.hit == Point(2, 3));
    CHECK(b.edge == 5);
    auto c = ray_shoot(u, h(1, 4), 1, 0);
    CHECK(c.hit == Point(10, 2));
    CHECK(c.edge == 1);
}

TEST_CASE("complete visibility") {
    const auto sq = fixtures::square();
    CHECK(completely_visible(sq, traj({{1, 1}, {4, 4}}), traj({{6, 6}, {9, 9}})));
    const auto u = fixtures::upoly();
    CHECK_FALSE(completely_visible(u, traj({h(1, 18), h(1, 1)}), traj({h(19, 18), h(19, 1)})));
    CHECK(completely_visible(u, traj({h(1, 1), h(5, 3)}), traj({h(15, 3), h(19, 1)})));
    // hull leaves the polygon but every pair is visible
    CHECK(completely_visible(u, traj({h(1, 1), h(1, 3)}), traj({h(19, 1), h(19, 3)})));
    CHECK(completely_visible(u, traj({h(1, 1), h(1, 3), {1, 1}}), traj({h(19, 1), h(19, 3)})));
}

TEST_CASE("starting point and total invisibility") {
    const auto u = fixtures::upoly();
    auto s = find_starting_point(u, traj({h(1, 18), h(1, 1)}), traj({h(19, 18), h(19, 1)}));
    CHECK(s.kind == StartingPoint::Kind::start);
    CHECK(s.vertex == h(1, 18));
    CHECK_FALSE(s.total_invisibility());

    auto arms = find_starting_point(u, traj({h(1, 18), h(1, 8)}), traj({h(19, 18), h(19, 8)}));
    CHECK(arms.total_invisibility());

    auto sq = find_starting_point(fixtures::square(), traj({{1, 1}, {1, 9}}), traj({{9, 1}, {9, 9}}));
    CHECK(sq.kind == StartingPoint::Kind::complete_visibility);

    // COMB(3): teeth at x in [1,2], [3,4], [5,6]; trajectories in adjacent teeth.
    const auto comb = fixtures::comb(3);
    Trajectory tq = traj({Point(Rational(3, 2), 9), Point(Rational(3, 2), 1)});
    Trajectory tr = traj({Point(Rational(7, 2), 1), Point(Rational(7, 2), 9)});
    auto c = find_starting_point(comb, tq, tr);
    REQUIRE(c.kind == StartingPoint::Kind::start);
    CHECK(c.vertex == Point(Rational(3, 2), 9));
    for (const Point& w : tr.vertices())
        CHECK_FALSE(sees(comb, c.vertex, w));
}

TEST_CASE("starting vertex sees no vertex of the other trajectory") {
    std::mt19937_64 rng(23);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto poly = generators::random_polygon(seed, 16);
        auto tq = generators::random_trajectory(poly, rng, 4);
        auto tr = generators::random_trajectory(poly, rng, 4);
        auto s = find_starting_point(poly, tq, tr);
        if (s.kind != StartingPoint::Kind::start)
            continue;
        const auto& other = s.entity == Entity::q ? tr : tq;
        for (const Point& w : other.vertices())
            CHECK_FALSE(sees(poly, s.vertex, w));
    }
}
