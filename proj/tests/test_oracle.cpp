#include "doctest.h"

#include <cmath>
#include <random>

#include "polyvis/oracle.hpp"
#include "polyvis/visibility.hpp"

using namespace polyvis;

namespace {

Point h(long x2, long y2) { return Point(Rational(x2, 2), Rational(y2, 2)); }

bool all_of(const VisGrid& g, bool value) {
    for (char c : g.visible)
        if ((c != 0) != value)
            return false;
    return true;
}

/// Largest distance from an endpoint of one set to the nearest endpoint of
/// the other; infinite when the interval counts differ.
double endpoint_gap(const IntervalSet& a, const IntervalSet& b) {
    if (a.size() != b.size())
        return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max({worst, std::abs(a[i].lo - b[i].lo), std::abs(a[i].hi - b[i].hi)});
    return worst;
}

}  // namespace

TEST_CASE("uniform samples span the length") {
    auto s = uniform_samples(8.0, 5);
    REQUIRE(s.size() == 5);
    CHECK(s.front() == 0.0);
    CHECK(s[2] == 4.0);
    CHECK(s.back() == 8.0);
}

TEST_CASE("visibility grid on fixtures") {
    auto sq = oracle_vis_grid(fixtures::square(), Trajectory({{1, 1}, {1, 9}}), Trajectory({{9, 1}, {9, 9}}), 8);
    CHECK(sq.q_samples.size() == 8);
    CHECK(all_of(sq, true));

    const auto u = fixtures::upoly();
    auto arms = oracle_vis_grid(u, Trajectory({h(1, 18), h(1, 8)}), Trajectory({h(19, 18), h(19, 8)}), 8);
    CHECK(all_of(arms, false));

    Trajectory tq({h(1, 1), h(1, 18)});
    Trajectory tr({h(19, 1), h(19, 18)});
    auto full = oracle_vis_grid(u, tq, tr, 64);
    bool any = false;
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j < 64; ++j) {
            if (!full.at(i, j))
                continue;
            any = true;
            // grazing lines through (2,2) and (8,2) end at height 23/10
            CHECK(full.q_samples[i] <= 1.8 + 1e-12);
            CHECK(full.r_samples[j] <= 1.8 + 1e-12);
            // above the channel top only one side may rise
            CHECK((full.q_samples[i] <= 1.5 + 1e-12 || full.r_samples[j] <= 1.5 + 1e-12));
        }
    CHECK(any);
    CHECK(full.at(0, 0));
}

TEST_CASE("time replay on fixtures") {
    auto sq = oracle_time_intervals(fixtures::square(), Trajectory({{1, 1}, {1, 9}}), Trajectory({{9, 1}, {9, 9}}), 1,
                                    1, 1.0 / 64);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].lo == 0.0);
    CHECK(sq[0].hi == doctest::Approx(8.0));

    const auto u = fixtures::upoly();
    const double dt = 1.0 / 512;
    auto iv = oracle_time_intervals(u, Trajectory({h(1, 18), h(1, 1)}), Trajectory({h(19, 18), h(19, 1)}), 1, 1, dt);
    REQUIRE(iv.size() == 1);
    CHECK(std::abs(iv[0].lo - 7.0) <= dt);
    CHECK(std::abs(iv[0].hi - 8.5) <= dt);

    auto arms = oracle_time_intervals(u, Trajectory({h(1, 18), h(1, 8)}), Trajectory({h(19, 18), h(19, 8)}), 1, 1, dt);
    CHECK(arms.empty());
}

TEST_CASE("time replay halving the step moves only boundaries") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto poly = generators::random_polygon(seed, 16);
        auto tq = generators::random_trajectory(poly, rng, 4);
        auto tr = generators::random_trajectory(poly, rng, 4);
        const double dt = 1.0 / 64;
        auto a = oracle_time_intervals(poly, tq, tr, 1, 1, dt);
        auto b = oracle_time_intervals(poly, tq, tr, 1, 1, dt / 2);
        // sets may differ only by runs shorter than one coarse step
        IntervalSet a_long, b_long;
        for (const auto& i : a)
            if (i.hi - i.lo > dt)
                a_long.push_back(i);
        for (const auto& i : b)
            if (i.hi - i.lo > 2 * dt)
                b_long.push_back(i);
        if (a_long.size() == b_long.size())
            CHECK(endpoint_gap(a_long, b_long) <= dt + 1e-12);
        for (const auto& i : b) {
            double mid = 0.5 * (i.lo + i.hi);
            bool covered = false;
            for (const auto& j : a)
                covered = covered || (j.lo - dt <= mid && mid <= j.hi + dt);
            if (i.hi - i.lo > 2 * dt)
                CHECK(covered);
        }
    }
}

TEST_CASE("velocity sweep on simple scenes") {
    std::vector<double> speeds{1, 2, 4, 8};
    auto convex = oracle_velocity_sweep(fixtures::square(), Trajectory({{1, 1}, {1, 9}}),
                                        Trajectory({{9, 1}, {9, 9}}), Entity::q, speeds, 1.0, 32);
    REQUIRE(convex.size() == 4);
    for (const auto& row : convex) {
        REQUIRE(row.visible.size() == 1);
        CHECK(row.visible[0].lo == 0.0);
        CHECK(row.visible[0].hi == doctest::Approx(8.0));
    }
    const auto u = fixtures::upoly();
    auto empty = oracle_velocity_sweep(u, Trajectory({h(1, 18), h(1, 8)}), Trajectory({h(19, 18), h(19, 8)}),
                                       Entity::r, speeds, 1.0, 32);
    for (const auto& row : empty)
        CHECK(row.visible.empty());
    // beyond the trajectory end nothing is visible
    std::vector<double> far{100};
    auto past = oracle_velocity_sweep(fixtures::square(), Trajectory({{1, 1}, {1, 9}}), Trajectory({{9, 1}, {9, 9}}),
                                      Entity::q, far, 1.0, 8);
    CHECK(past[0].visible.empty());
}

TEST_CASE("shortest path oracle agrees with the funnel") {
    auto sq = oracle_shortest_path(fixtures::square(), {1, 1}, {9, 9});
    CHECK(sq.waypoints.size() == 2);
    const auto u = fixtures::upoly();
    auto around = oracle_shortest_path(u, h(1, 18), h(19, 18));
    REQUIRE(around.waypoints.size() == 4);
    CHECK(around.waypoints[1] == Point(2, 2));
    CHECK(around.waypoints[2] == Point(8, 2));
    auto zero = oracle_shortest_path(u, h(1, 18), h(1, 18));
    CHECK(zero.length() == 0.0);
    CHECK_THROWS(oracle_shortest_path(u, Point(5, 9), h(1, 18)));

    std::mt19937_64 rng(9);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto poly = generators::random_polygon(seed, 24);
        PathFinder pf(poly);
        for (int k = 0; k < 5; ++k) {
            Point a = generators::random_interior_point(poly, rng);
            Point b = generators::random_interior_point(poly, rng);
            double lo = oracle_shortest_path(poly, a, b).length();
            double hi = pf.shortest_path(a, b).length();
            CHECK(std::abs(lo - hi) <= 1e-9);
        }
    }
}

TEST_CASE("rotational sweep area matches the visibility polygon") {
    const auto u = fixtures::upoly();
    CHECK(oracle_visibility_area2(u, Point(5, 1)) == visibility_polygon(u, Point(5, 1)).area2());
    CHECK(oracle_visibility_area2(fixtures::square(), Point(3, 3)) == fixtures::square().area2());
}

TEST_CASE("mismatch counting tolerates boundary quantization") {
    auto samples = uniform_samples(1.0, 11);
    auto truth = membership(samples, IntervalSet{{0.3, 0.6}});
    CHECK(truth[3] == 1);
    CHECK(truth[6] == 1);
    CHECK(truth[7] == 0);
    CHECK(far_mismatches(samples, truth, IntervalSet{{0.3, 0.6}}, 0.0) == 0);
    CHECK(far_mismatches(samples, truth, IntervalSet{{0.25, 0.7}}, 0.15) == 0);
    CHECK(far_mismatches(samples, truth, IntervalSet{}, 0.05) == 4);
}
