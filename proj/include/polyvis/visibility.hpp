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

#ifndef POLYVIS_VISIBILITY_HPP
#define POLYVIS_VISIBILITY_HPP

#include <vector>

#include "polyvis/geometry.hpp"
#include "polyvis/paths.hpp"

/// \file
/// Point visibility: visible portions of segments, visibility polygons,
/// ray shooting and the global complete-visibility / starting-point checks.

namespace polyvis {

/// What pins one end of a visible interval. A `vertex` pivot moves with the
/// viewer (the end lies on the ray from the viewer through `point`); a
/// `fixed` end does not (host endpoint or contact with a polygon edge).
struct Pivot {
    enum class Kind { fixed, vertex };
    Kind kind = Kind::fixed;
    Point point;

    friend bool operator==(const Pivot&, const Pivot&) = default;
};

/// Closed parameter interval [lo, hi] of a host segment seen by a viewer.
struct VisibleInterval {
    bool empty = true;
    Rational lo{0};
    Rational hi{0};
    Pivot lo_pivot;
    Pivot hi_pivot;
};

/// Exact visible part of `host` (assumed inside the polygon) from `viewer`.
VisibleInterval visible_interval(const SimplePolygon& poly, const Point& viewer, const Segment& host);

struct VisPolygon {
    std::vector<Point> region;  ///< counterclockwise ring
    Point kernel_point;

    Rational area2() const;
    bool contains(const Point& p) const;
};

VisPolygon visibility_polygon(const SimplePolygon& poly, const Point& p);
VisPolygon visibility_polygon(const PathFinder& paths, const Point& p);

struct RayHit {
    Point hit;
    std::size_t edge = 0;
};

/// End of the maximal run of the ray (origin + s * direction, s >= 0) that
/// stays in the closed polygon. Grazing contact does not stop the ray.
RayHit ray_shoot(const SimplePolygon& poly, const Point& origin, const Rational& dx, const Rational& dy);

/// Convex hull (counterclockwise, no collinear points) by Graham scan.
std::vector<Point> graham_hull(std::vector<Point> pts);

/// True iff every point of tq sees every point of tr.
bool completely_visible(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr);

/// True iff no point of tq sees any point of tr.
bool totally_invisible(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr);

struct StartingPoint {
    enum class Kind {
        start,                ///< a vertex that sees no vertex of the other trajectory
        total_invisibility,   ///< nothing of either trajectory is mutually visible
        complete_visibility,  ///< everything is mutually visible
        none                  ///< every vertex sees some vertex of the other trajectory
    };
    Kind kind = Kind::none;
    Entity entity = Entity::q;
    std::size_t vertex_index = 0;
    Point vertex;
    /// The visibility-polygon cover skipped a start vertex that the second
    /// pass over marked vertices recovered.
    bool cover_gap = false;
    bool total_invisibility() const { return kind == Kind::total_invisibility; }
};

StartingPoint find_starting_point(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr);
StartingPoint find_starting_point(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr);

}  // namespace polyvis

#endif  // POLYVIS_VISIBILITY_HPP
