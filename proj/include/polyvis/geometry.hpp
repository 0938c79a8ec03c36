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

#ifndef POLYVIS_GEOMETRY_HPP
#define POLYVIS_GEOMETRY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/// \file
/// Exact geometric primitives: points, segments, simple polygons,
/// trajectories and the predicates every other module is built on.

namespace polyvis {

using Rational = mpq_class;

/// Raised when an input object violates a structural invariant
/// (self-intersecting polygon, trajectory leaving the polygon, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational point. A double approximation of each coordinate is
/// cached so predicates can run a floating-point filter first.
class Point {
public:
    Point() = default;
    Point(Rational x, Rational y);
    Point(long x, long y);

    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    double approx_x() const { return ax_; }
    double approx_y() const { return ay_; }

    friend bool operator==(const Point& a, const Point& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    /// Lexicographic (x, then y).
    friend bool operator<(const Point& a, const Point& b);

private:
    Rational x_{0};
    Rational y_{0};
    double ax_ = 0.0;
    double ay_ = 0.0;
};

std::ostream& operator<<(std::ostream& o, const Point& p);

/// Exact rational from a finite double (every double is a dyadic rational).
Rational to_rational(double v);
/// Shortest decimal that round-trips `v`, read back as an exact rational.
/// Used for user-facing numbers such as `0.1`.
Rational decimal_rational(double v);
/// "p/q", "p", or a decimal literal.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
/// Exact square root when `r` is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& r);

enum class Orientation { right = -1, collinear = 0, left = 1 };

/// Sign of cross(q - p, r - p): +1 left turn, -1 right turn, 0 collinear.
int orient_sign(const Point& p, const Point& q, const Point& r);
Orientation orientation(const Point& p, const Point& q, const Point& r);

int compare_x(const Point& a, const Point& b);
int compare_y(const Point& a, const Point& b);

/// Closed segment test for a point already known or suspected to be collinear.
bool on_segment(const Point& p, const Point& a, const Point& b);

/// Point a + t (b - a).
Point lerp(const Point& a, const Point& b, const Rational& t);
/// Parameter t with p = a + t (b - a), for p on the line through a, b.
Rational param_on(const Point& a, const Point& b, const Point& p);
/// Intersection of the infinite lines (a, b) and (c, d); empty when parallel.
std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d);
/// Parameter along (a, b) where it meets the line (c, d); empty when parallel.
std::optional<Rational> line_param(const Point& a, const Point& b, const Point& c, const Point& d);

double distance(const Point& a, const Point& b);

struct Segment {
    Point a;
    Point b;

    Segment() = default;
    /// Throws std::invalid_argument when a == b.
    Segment(Point a, Point b);

    double length() const { return distance(a, b); }
    Point at(const Rational& t) const { return lerp(a, b, t); }
};

struct SegmentIntersection {
    enum class Kind { none, point, overlap };
    Kind kind = Kind::none;
    Point p;  ///< the point, or the first end of the overlap
    Point q;  ///< second end of the overlap
};

SegmentIntersection segment_intersect(const Segment& s, const Segment& t);

enum class Location { interior, boundary, exterior };

/// Simple polygon, stored counterclockwise.
class SimplePolygon {
public:
    SimplePolygon() = default;
    /// Validates simplicity; clockwise input is reversed (see was_reversed()).
    explicit SimplePolygon(std::vector<Point> vertices);

    std::size_t size() const { return vertices_.size(); }
    const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    const std::vector<Point>& vertices() const { return vertices_; }
    /// Edge i runs from vertex(i) to vertex(i + 1).
    Segment edge(std::size_t i) const { return Segment(vertex(i), vertex(i + 1)); }
    bool is_reflex(std::size_t i) const;
    bool was_reversed() const { return reversed_; }
    /// Twice the signed area (positive).
    Rational area2() const;

private:
    std::vector<Point> vertices_;
    bool reversed_ = false;
};

/// Twice the signed area of a vertex ring (shoelace).
Rational signed_area2(std::span<const Point> ring);

Location locate(const Point& p, const SimplePolygon& poly);
/// Same test against a raw counterclockwise or clockwise vertex ring.
Location locate(const Point& p, std::span<const Point> ring);
inline Location point_in_polygon(const Point& p, const SimplePolygon& poly) { return locate(p, poly); }

/// Closed containment: true iff every point of [a, b] lies in the closed polygon.
/// a == b is allowed. This is the visibility predicate used throughout.
bool sees(const SimplePolygon& poly, const Point& a, const Point& b);
inline bool segment_inside_polygon(const Segment& s, const SimplePolygon& poly) { return sees(poly, s.a, s.b); }

/// Closed containment of a convex region given by its vertices in
/// counterclockwise order (degenerate rings are allowed).
bool convex_region_inside(const SimplePolygon& poly, std::span<const Point> ring);

/// Exact position on a trajectory: edge index plus fraction along the edge.
struct TrajPosition {
    std::size_t edge = 0;
    Rational fraction{0};
};

/// Piecewise-linear trajectory. Arc lengths are doubles; positions are exact.
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(std::vector<Point> vertices);

    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const { return vertices_.size() - 1; }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }
    const std::vector<Point>& vertices() const { return vertices_; }
    Segment edge(std::size_t i) const { return Segment(vertices_[i], vertices_[i + 1]); }
    double length() const { return cumulative_.back(); }
    double cumulative(std::size_t i) const { return cumulative_[i]; }
    double edge_length(std::size_t i) const { return cumulative_[i + 1] - cumulative_[i]; }

    /// Canonical position at arc length `arclen`; throws std::domain_error
    /// outside [0, length()] (with 1e-9 slack).
    TrajPosition position_at(double arclen) const;
    Point point_at(const TrajPosition& pos) const;
    Point point_at_arclen(double arclen) const { return point_at(position_at(arclen)); }
    double arclen_of(const TrajPosition& pos) const;
    /// Arc length of the point at parameter t on edge i.
    double arclen_on_edge(std::size_t edge, const Rational& t) const;

private:
    std::vector<Point> vertices_;
    std::vector<double> cumulative_;
    /// Exact prefix lengths while every edge so far has a rational length.
    std::vector<std::optional<Rational>> exact_cumulative_;
};

inline constexpr double kLengthTolerance = 1e-9;

enum class Entity { q, r };

/// Closed numeric interval (times, arc lengths or speeds).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Disjoint, sorted closed intervals.
using IntervalSet = std::vector<Interval>;

/// Sorts and merges intervals that overlap or touch within `slack`.
IntervalSet normalize(IntervalSet set, double slack = 0.0);

/// Throws ValidationError if a vertex lies outside the polygon or an edge
/// crosses its boundary.
void validate_trajectory(const SimplePolygon& poly, const Trajectory& traj, const std::string& name);

/// Polygon plus the two trajectories and the optional motion parameters.
struct Scene {
    SimplePolygon polygon;
    Trajectory tau_q;
    Trajectory tau_r;
    std::optional<double> c0;
    std::optional<double> c1;
    double unit = 1.0;  ///< time unit of the velocity-to-position mapping
    std::optional<double> eps;
    std::vector<std::string> warnings;
};

/// Builds and validates a scene; throws ValidationError.
Scene make_scene(std::vector<Point> polygon, std::vector<Point> tau_q, std::vector<Point> tau_r);

/// M = largest absolute integer coordinate, L = 20 M, d = 1 / L.
struct IntegralityParams {
    bool available = false;
    long long M = 0;
    long long L = 0;
    Rational d{0};
};

IntegralityParams integrality_params(const Scene& scene);
IntegralityParams integrality_params(const SimplePolygon& poly, std::span<const Trajectory> trajs);

/// Canonical fixtures shared by tests, the CLI and the benchmarks.
namespace fixtures {
SimplePolygon square();
SimplePolygon upoly();
/// k teeth of width 1 (gap 1, height 8) on a base strip of height 2;
/// the base spans x in [0, 2k + 1].
SimplePolygon comb(int k);
}  // namespace fixtures

}  // namespace polyvis

#endif  // POLYVIS_GEOMETRY_HPP
