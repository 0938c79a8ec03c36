#include "doctest.h"

#include <random>

#include "polyvis/oracle.hpp"
#include "polyvis/trajvis.hpp"

using namespace polyvis;

namespace {

Point h(long x2, long y2) { return Point(Rational(x2, 2), Rational(y2, 2)); }

Trajectory traj(std::vector<Point> pts) { return Trajectory(std::move(pts)); }

}  // namespace

TEST_CASE("given velocities on fixtures") {
    auto sq = solve_given_velocities(fixtures::square(), traj({{1, 1}, {1, 9}}), traj({{9, 1}, {9, 9}}), 1, 1);
    REQUIRE(sq.intervals.size() == 1);
    CHECK(sq.intervals[0] == Interval{0.0, 8.0});

    const auto u = fixtures::upoly();
    Trajectory tq = traj({h(1, 18), h(1, 1)});
    Trajectory tr = traj({h(19, 18), h(19, 1)});
    auto res = solve_given_velocities(u, tq, tr, 1, 1);
    CHECK(res.L == 800);
    REQUIRE(res.intervals.size() == 1);
    CHECK(res.intervals[0].lo == 7.0);
    CHECK(res.intervals[0].hi == 8.5);
    CHECK(res.max_marks_per_level <= 2);

    auto arms = solve_given_velocities(u, traj({h(1, 18), h(1, 8)}), traj({h(19, 18), h(19, 8)}), 1, 1);
    CHECK(arms.glass_empty);
    CHECK(arms.intervals.empty());

    CHECK_THROWS_AS(solve_given_velocities(u, tq, tr, 0, 1), std::invalid_argument);
}

TEST_CASE("given velocities with hold at end") {
    const auto u = fixtures::upoly();
    Trajectory tq = traj({h(1, 18), h(1, 1)});
    Trajectory tr = traj({h(19, 18), h(19, 4)});
    // r stops at y = 2 after 7 time units and keeps seeing q's lower stretch
    LemmaOptions hold;
    hold.hold_at_end = true;
    auto held = solve_given_velocities(u, tq, tr, 1, 1, hold);
    REQUIRE(held.intervals.size() == 1);
    CHECK(held.intervals[0].lo == doctest::Approx(7.0).epsilon(1e-9));
    CHECK(held.intervals[0].hi == 8.5);
    auto plain = solve_given_velocities(u, tq, tr, 1, 1);
    CHECK(plain.horizon == 7.0);
}

TEST_CASE("given velocities agree with the time replay") {
    std::mt19937_64 rng(8);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto poly = generators::random_polygon(seed, 14);
        auto tq = generators::random_trajectory(poly, rng, 3, true);
        auto tr = generators::random_trajectory(poly, rng, 3, true);
        double c0 = generators::random_velocity(rng), c1 = generators::random_velocity(rng);
        auto res = solve_given_velocities(poly, tq, tr, c0, c1);
        double tol = 1.0 / static_cast<double>(res.L);
        auto truth = oracle_time_intervals(poly, tq, tr, c0, c1, tol / 4.0);
        truth.erase(std::remove_if(truth.begin(), truth.end(), [](const Interval& i) { return i.hi <= i.lo; }),
                    truth.end());
        REQUIRE(res.intervals.size() == truth.size());
        for (std::size_t i = 0; i < truth.size(); ++i) {
            CHECK(std::abs(res.intervals[i].lo - truth[i].lo) <= tol);
            CHECK(std::abs(res.intervals[i].hi - truth[i].hi) <= tol);
        }
    }
}

TEST_CASE("segment structure on fixtures") {
    auto sq = build_segment_structure(fixtures::square(), Segment({1, 1}, {1, 9}), Segment({9, 1}, {9, 9}));
    REQUIRE(sq.wedges.size() == 1);
    CHECK(sq.wedges[0].q_lo == 0);
    CHECK(sq.wedges[0].q_hi == 1);
    CHECK(sq.wedges[0].r_lo == 0);
    CHECK(sq.wedges[0].r_hi == 1);
    auto full = query_positions(sq, 3, 5);
    REQUIRE(full.r_visible.size() == 1);
    CHECK(full.r_visible[0] == Interval{0.0, 8.0});
    CHECK(full.mutually_visible);

    const auto u = fixtures::upoly();
    Segment s1(h(1, 18), h(1, 1)), s2(h(19, 18), h(19, 1));
    auto us = build_segment_structure(u, s1, s2);
    REQUIRE_FALSE(us.wedges.empty());
    for (const Wedge& w : us.wedges) {
        CHECK(s1.at(w.q_lo).approx_y() <= 2.3 + 1e-12);
        CHECK(s2.at(w.r_lo).approx_y() <= 2.3 + 1e-12);
    }
    // q at y = 1 (arc length 8) sees x = 9.5 between y = 0.5 and the line through (8,2)
    auto a = query_positions(us, 8, 8);
    REQUIRE(a.r_visible.size() == 1);
    CHECK(a.r_visible[0].hi == doctest::Approx(8.5));
    CHECK(a.r_visible[0].lo == doctest::Approx(6.8));
    CHECK(a.mutually_visible);
    auto hidden = query_positions(us, 4, 4);
    CHECK(hidden.r_visible.empty());
    CHECK_FALSE(hidden.mutually_visible);
    CHECK_THROWS_AS(query_positions(us, 9, 1), std::domain_error);

    auto arms = build_segment_structure(u, Segment(h(1, 18), h(1, 8)), Segment(h(19, 18), h(19, 8)));
    CHECK(arms.empty());
    CHECK(arms.wedges.empty());
    CHECK(query_positions(arms, 1, 1).r_visible.empty());
}

TEST_CASE("segment structure wedges are visible and queries match the grid") {
    std::mt19937_64 rng(12);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto poly = generators::random_polygon(seed, 20);
        auto [s1, s2] = generators::random_segment_pair(poly, rng);
        auto st = build_segment_structure(poly, s1, s2);
        for (const Wedge& w : st.wedges) {
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    Point a = s1.at(w.q_lo + (w.q_hi - w.q_lo) * Rational(i, 7));
                    Point b = s2.at(w.r_lo + (w.r_hi - w.r_lo) * Rational(j, 7));
                    CHECK(sees(poly, a, b));
                }
        }
        for (int k = 0; k <= 16; ++k) {
            double pos = s1.length() * k / 16.0;
            Point x = s1.at(param_on(s1.a, s1.b, Trajectory({s1.a, s1.b}).point_at_arclen(pos)));
            auto vi = visible_interval(poly, x, s2);
            auto got = st.visible_from(Entity::q, pos);
            REQUIRE(got.has_value() == !vi.empty);
            if (got) {
                CHECK(got->lo == doctest::Approx(vi.lo.get_d() * s2.length()));
                CHECK(got->hi == doctest::Approx(vi.hi.get_d() * s2.length()));
            }
        }
    }
}

TEST_CASE("velocity ranges for target ranges") {
    const auto u = fixtures::upoly();
    Segment s1(h(1, 18), h(1, 1)), s2(h(19, 18), h(19, 1));
    auto us = build_segment_structure(u, s1, s2);
    // r must see all of q's stretch y in [0.5, 1]: arc lengths [8, 8.5] on s1
    auto ans = query_velocities(us, {8.0, 8.5}, {8.0, 8.5});
    REQUIRE_FALSE(ans.r_velocities.empty());
    REQUIRE_FALSE(ans.q_velocities.empty());
    for (const auto& vr : ans.r_velocities) {
        for (int i = 0; i <= 8; ++i) {
            double pos = vr.lo + (vr.hi - vr.lo) * i / 8.0;
            Point viewer = Trajectory({s2.a, s2.b}).point_at_arclen(pos);
            CHECK(sees(u, viewer, Point(Rational(1, 2), 1)));
            CHECK(sees(u, viewer, Point(Rational(1, 2), Rational(1, 2))));
        }
    }
    auto none = query_velocities(us, {0.0, 8.5}, {0.0, 8.5});
    CHECK(none.q_velocities.empty());
    CHECK(none.r_velocities.empty());
}

namespace {

Trajectory upoly_q() { return traj({h(1, 18), h(1, 4), h(1, 1)}); }
Trajectory upoly_r() { return traj({h(19, 18), h(19, 4), h(19, 1)}); }

/// Compares a query answer with the sweep oracle row at the same speed.
std::size_t sweep_mismatches(const GeneralVisStructure& s, Entity viewer, double v, std::size_t res) {
    std::vector<double> speeds{v};
    auto rows = oracle_velocity_sweep(s.polygon, s.tq, s.tr, viewer, speeds, s.unit, res);
    const Trajectory& other = viewer == Entity::q ? s.tr : s.tq;
    auto samples = uniform_samples(other.length(), res);
    auto truth = membership(samples, rows[0].visible);
    IntervalSet claimed;
    for (const auto& a : query_velocity(s, viewer, v))
        claimed.push_back(a.sub);
    double cell = other.length() / static_cast<double>(res - 1);
    return far_mismatches(samples, truth, claimed, 2.0 * cell);
}

}  // namespace

TEST_CASE("connecting vertices on the U polygon") {
    const auto u = fixtures::upoly();
    auto cv = scan_connecting_vertices(u, upoly_q(), upoly_r());
    REQUIRE(cv.ok);
    CHECK(cv.vq1 == h(1, 4));
    CHECK(cv.vr1 == h(19, 4));
    CHECK(cv.vq2 == h(1, 1));
    CHECK(cv.vr2 == h(19, 1));
    CHECK(certificate_holds(u, upoly_q(), upoly_r(), cv));
    bool restarted = false;
    for (const auto& line : cv.trace)
        restarted = restarted || line.rfind("restart at", 0) == 0;
    CHECK(restarted);
    // every visible vertex pair lies between the two connecting pairs
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (sees(u, upoly_q().vertex(i), upoly_r().vertex(j)))
                CHECK((i >= 1 && j >= 1));
}

TEST_CASE("restricted structure answers velocity queries") {
    const auto u = fixtures::upoly();
    auto s = build_structure(u, upoly_q(), upoly_r());
    CHECK(s.mode == GeneralVisStructure::Mode::restricted);
    REQUIRE(s.vis_q.size() == 1);
    CHECK(s.vis_q[0].lo == doctest::Approx(6.7));
    CHECK(s.vis_q[0].hi == doctest::Approx(8.5));
    // r at y = 5 sees nothing
    CHECK(query_velocity(s, Entity::r, 4.0).empty());
    // r at y = 1 sees q between y = 0.5 and the line through (2,2)
    auto a = query_velocity(s, Entity::r, 8.0);
    REQUIRE(a.size() == 1);
    CHECK(a[0].sub.lo == doctest::Approx(6.8));
    CHECK(a[0].sub.hi == doctest::Approx(8.5));
    CHECK(a[0].velocities.lo == doctest::Approx(6.8));
    // closed at the end of the visible stretch
    CHECK_FALSE(query_velocity(s, Entity::r, s.vis_r[0].lo).empty());
    CHECK(query_velocity(s, Entity::r, 100.0).empty());
    CHECK_THROWS_AS(query_velocity(s, Entity::r, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(query_velocity(s, Entity::q, -1.0), std::invalid_argument);
    for (int k = 1; k <= 64; ++k)
        CHECK(sweep_mismatches(s, k % 2 ? Entity::q : Entity::r, 8.5 * k / 64.0, 128) == 0);
}

TEST_CASE("general structure on a comb") {
    const auto comb = fixtures::comb(4);
    Trajectory tq = traj({h(3, 18), h(3, 3), h(7, 3), h(7, 18), h(8, 18), h(8, 3), h(11, 3), h(11, 18), h(12, 18),
                          h(12, 3), h(15, 3), h(15, 18)});
    Trajectory tr = traj({h(1, 1), h(9, 1), h(17, 1)});
    auto s = build_general_structure(comb, tq, tr);
    CHECK(s.cells.size() >= 4);
    Rational total(0);
    std::vector<int> q_owner(tq.size(), 0), r_owner(tr.size(), 0);
    for (const Cell& c : s.cells) {
        total += c.area2();
        for (auto i : c.q_vertices)
            ++q_owner[i];
        for (auto j : c.r_vertices)
            ++r_owner[j];
    }
    CHECK(total <= comb.area2());
    for (int k : q_owner)
        CHECK(k == 1);
    for (int k : r_owner)
        CHECK(k == 1);
    for (int k = 1; k <= 64; ++k) {
        CHECK(sweep_mismatches(s, Entity::q, tq.length() * k / 64.0, 128) == 0);
        CHECK(sweep_mismatches(s, Entity::r, tr.length() * k / 64.0, 128) == 0);
    }
}

TEST_CASE("velocity queries agree with the sweep on random scenes") {
    std::mt19937_64 rng(31);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto poly = generators::random_polygon(seed, 16);
        auto tq = generators::random_trajectory(poly, rng, 4);
        auto tr = generators::random_trajectory(poly, rng, 4);
        auto s = build_structure(poly, tq, tr);
        for (int k = 1; k <= 32; ++k) {
            CHECK(sweep_mismatches(s, Entity::q, tq.length() * k / 32.0, 64) == 0);
            CHECK(sweep_mismatches(s, Entity::r, tr.length() * k / 32.0, 64) == 0);
        }
        if (s.mode == GeneralVisStructure::Mode::general || s.mode == GeneralVisStructure::Mode::restricted) {
            auto g = build_general_structure(poly, tq, tr);
            for (int k = 1; k <= 8; ++k)
                CHECK(sweep_mismatches(g, Entity::q, tq.length() * k / 8.0, 64) == 0);
        }
    }
}

TEST_CASE("scan traces on random scenes") {
    std::mt19937_64 rng(77);
    int reversed = 0, fallbacks = 0, certified = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto poly = generators::random_polygon(seed, 16);
        auto tq = generators::random_trajectory(poly, rng, 4);
        auto tr = generators::random_trajectory(poly, rng, 4);
        auto cv = scan_connecting_vertices(poly, tq, tr);
        for (const auto& line : cv.trace)
            if (line.rfind("first pair visible; reverse", 0) == 0)
                ++reversed;
        if (cv.ok) {
            ++certified;
            CHECK(certificate_holds(poly, tq, tr, cv));
            CHECK(sees(poly, cv.vq1, cv.vr1));
            CHECK(sees(poly, cv.vq2, cv.vr2));
        } else {
            ++fallbacks;
            CHECK_FALSE(cv.reason.empty());
            if (fallbacks <= 3) {
                auto g = build_structure(poly, tq, tr);
                CHECK(g.mode != GeneralVisStructure::Mode::restricted);
                for (int k = 1; k <= 16; ++k) {
                    CHECK(sweep_mismatches(g, Entity::q, tq.length() * k / 16.0, 64) == 0);
                    CHECK(sweep_mismatches(g, Entity::r, tr.length() * k / 16.0, 64) == 0);
                }
            }
        }
    }
    CHECK(reversed > 0);
    CHECK(fallbacks > 0);
    CHECK(certified > 0);
}

TEST_CASE("segment structure across comb teeth") {
    const auto comb = fixtures::comb(3);
    auto s = build_segment_structure(comb, Segment(h(3, 18), h(3, 1)), Segment(h(11, 18), h(11, 1)));
    CHECK(s.wedges.size() >= 2);
    for (const Wedge& w : s.wedges) {
        CHECK(w.q_lo <= w.q_hi);
        CHECK(w.r_lo <= w.r_hi);
        CHECK(sees(comb, s.s1.at(w.q_lo), s.s2.at(w.r_lo)));
        CHECK(sees(comb, s.s1.at(w.q_hi), s.s2.at(w.r_hi)));
    }
    // the tooth walls hide the upper parts of both segments
    auto p = query_positions(s, 1.0, 1.0);
    CHECK_FALSE(p.mutually_visible);
    CHECK(p.r_visible.empty());
}
