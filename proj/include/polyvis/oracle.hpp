// Copyright 2026 The polyvis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLYVIS_ORACLE_HPP
#define POLYVIS_ORACLE_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "polyvis/geometry.hpp"
#include "polyvis/paths.hpp"

/// \file
/// Brute-force ground truth built on the exact predicates, plus seeded
/// scene generators shared by tests, benchmarks and the CLI.

namespace polyvis {

/// Pairwise visibility at arc-length-uniform samples.
struct VisGrid {
    std::vector<double> q_samples;  ///< arc lengths on tau_q
    std::vector<double> r_samples;  ///< arc lengths on tau_r
    std::vector<char> visible;      ///< row-major, q index first

    bool at(std::size_t i, std::size_t j) const { return visible[i * r_samples.size() + j] != 0; }
};

/// Sample i sits at arc length i / (res - 1) * length.
std::vector<double> uniform_samples(double length, std::size_t res);

VisGrid oracle_vis_grid(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr, std::size_t res);

/// Replays the motion at time steps k * dt (plus the final instant).
/// Visible runs of consecutive samples become intervals [first, last].
IntervalSet oracle_time_intervals(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr, double c0,
                                  double c1, double dt, bool hold_at_end = false);

struct SweepRow {
    double velocity = 0.0;
    /// Visible arc-length runs on the other trajectory (sample-valued ends).
    IntervalSet visible;
};

/// For each velocity v, the viewer is placed at arc length v * unit on its
/// own trajectory and `res` samples of the other trajectory are tested.
std::vector<SweepRow> oracle_velocity_sweep(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                                            Entity viewer, std::span<const double> velocities, double unit,
                                            std::size_t res);

/// Dijkstra over the visibility graph of polygon vertices plus p and q.
GeodesicPath oracle_shortest_path(const SimplePolygon& poly, const Point& p, const Point& q);

/// Area (doubled) of the visibility polygon by a naive rotational sweep.
Rational oracle_visibility_area2(const SimplePolygon& poly, const Point& p);

/// Samples whose truth value disagrees with membership in `claimed` and
/// that lie farther than `tolerance` from every endpoint of `claimed`.
std::size_t far_mismatches(std::span<const double> samples, std::span<const char> truth, const IntervalSet& claimed,
                           double tolerance);

/// Truth vector of a sampled row, from runs produced by the sweep oracle.
std::vector<char> membership(std::span<const double> samples, const IntervalSet& set);

namespace generators {

/// Seeded simple polygon with integer coordinates in [0, coord_max]:
/// a star-shaped draw untangled by 2-opt moves. At least 4 vertices.
SimplePolygon random_polygon(std::uint64_t seed, std::size_t max_n, long coord_max = 10);
/// Interior point with coordinates on a 1/4 grid.
Point random_interior_point(const SimplePolygon& poly, std::mt19937_64& rng);
/// Interior integer-coordinate point, if the polygon has one.
Point random_lattice_point(const SimplePolygon& poly, std::mt19937_64& rng);
/// Two segments contained in the polygon.
std::pair<Segment, Segment> random_segment_pair(const SimplePolygon& poly, std::mt19937_64& rng);
/// Polyline with up to `max_vertices` vertices whose edges stay inside.
Trajectory random_trajectory(const SimplePolygon& poly, std::mt19937_64& rng, std::size_t max_vertices,
                             bool lattice = false);
/// One of 1/2, 1, 3/2, 2.
double random_velocity(std::mt19937_64& rng);

}  // namespace generators

}  // namespace polyvis

#endif  // POLYVIS_ORACLE_HPP
