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

#ifndef POLYVIS_PATHS_HPP
#define POLYVIS_PATHS_HPP

#include <array>
#include <vector>

#include "polyvis/geometry.hpp"

/// \file
/// Geodesics inside a simple polygon: ear-clipping triangulation, funnel
/// shortest paths, hourglasses and visibility glasses.

namespace polyvis {

/// Counterclockwise triangle over polygon vertex indices.
/// neighbor[k] is the triangle across edge (v[k], v[k + 1]), or -1.
struct Triangle {
    std::array<std::size_t, 3> v{};
    std::array<int, 3> neighbor{-1, -1, -1};
};

struct Triangulation {
    std::vector<Triangle> triangles;
    /// Dual tree adjacency.
    std::vector<std::vector<std::size_t>> dual;
};

Triangulation triangulate(const SimplePolygon& poly);

struct GeodesicPath {
    std::vector<Point> waypoints;

    double length() const;
};

/// Triangulates once and answers repeated shortest-path queries.
class PathFinder {
public:
    explicit PathFinder(const SimplePolygon& poly);

    /// Throws std::domain_error if an endpoint lies outside the polygon.
    GeodesicPath shortest_path(const Point& p, const Point& q) const;

    const SimplePolygon& polygon() const { return *poly_; }
    const Triangulation& triangulation() const { return tri_; }

private:
    std::vector<std::size_t> containing_triangles(const Point& p) const;
    std::vector<int> tree_distances(std::size_t from) const;

    const SimplePolygon* poly_;
    Triangulation tri_;
};

GeodesicPath shortest_path(const SimplePolygon& poly, const Point& p, const Point& q);

struct Hourglass {
    GeodesicPath upper_chain;  ///< from the first end of s1 to its partner on s2
    GeodesicPath lower_chain;
    bool closed = false;       ///< the chains share a vertex
};

Hourglass hourglass(const SimplePolygon& poly, const Segment& s1, const Segment& s2);
/// Endpoint form; allows degenerate (point) segments.
Hourglass hourglass(const PathFinder& paths, const Point& a1, const Point& b1, const Point& a2, const Point& b2);

struct VisibilityGlass {
    bool empty = true;
    Segment s1_visible;
    Segment s2_visible;
    /// Parameter range of s1_visible along s1 (and likewise for s2).
    Rational s1_lo{0}, s1_hi{0};
    Rational s2_lo{0}, s2_hi{0};
    /// Bounding bitangents clipped between s1 and s2; one entry when the
    /// two coincide (a single grazing line).
    std::vector<Segment> bitangents;
    /// Chain vertices of the hourglass labelings that bound the glass.
    std::vector<Point> chain_vertices;
};

VisibilityGlass visibility_glass(const SimplePolygon& poly, const Segment& s1, const Segment& s2);
VisibilityGlass visibility_glass(const PathFinder& paths, const Segment& s1, const Segment& s2);

}  // namespace polyvis

#endif  // POLYVIS_PATHS_HPP
