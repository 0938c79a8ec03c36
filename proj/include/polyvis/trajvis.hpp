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

#ifndef POLYVIS_TRAJVIS_HPP
#define POLYVIS_TRAJVIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyvis/geometry.hpp"
#include "polyvis/paths.hpp"
#include "polyvis/range_trees.hpp"
#include "polyvis/visibility.hpp"

/// \file
/// Trajectory visibility: the fixed-velocity time-interval solver, the
/// segment structure with its two query kinds, connecting vertices, and the
/// restricted / general structures answering velocity queries.

namespace polyvis {

struct LemmaOptions {
    /// Positional tolerance of boundary refinement; defaults to d.
    std::optional<double> eps;
    /// Entities park at their final vertex instead of leaving the scene.
    bool hold_at_end = false;
};

struct LemmaResult {
    IntervalSet intervals;   ///< disjoint, sorted, positive length
    bool glass_empty = false;
    long long L = 0;         ///< integrality scale
    double d = 0.0;          ///< piece length 1 / L
    double t_q = 0.0;        ///< time for q to advance one piece
    double t_r = 0.0;
    double horizon = 0.0;    ///< end of the evaluated time domain
    std::size_t steps = 0;   ///< merged timestamps processed
    std::size_t marked_nodes = 0;
    int max_marks_per_level = 0;
    std::vector<VisRangeTree> trees;  ///< one per edge of tau_r
};

/// Scale L of the integrality parameters. Rational input is scaled by the
/// common denominator D first, giving L = 20 M' D for the scaled maximum M'.
long long lemma_scale(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr);

/// Time intervals during which q (speed c0) and r (speed c1) see each other.
/// Throws std::invalid_argument when a speed is not positive.
LemmaResult solve_given_velocities(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr, double c0,
                                   double c1, const LemmaOptions& options = {});

/// Closed speed range (length per time unit).
struct VelocityRange {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const VelocityRange&, const VelocityRange&) = default;
};

/// One end of the visible target interval as a function of the viewer.
struct EndRule {
    Pivot pivot;        ///< vertex: the end lies on the line viewer-pivot
    Rational fixed{0};  ///< target parameter of a fixed end
};

/// Source-parameter piece on which both ends follow a single rule.
struct SidePiece {
    Rational lo{0};
    Rational hi{0};
    EndRule lo_end;
    EndRule hi_end;
};

/// Visible part of `target` from each point of `source`, as pieces.
class SideMap {
public:
    SideMap() = default;
    /// Pieces of [from, to] cut where a line of `breaks` crosses `source`.
    SideMap(const SimplePolygon& poly, Segment source, Segment target,
            const std::vector<std::pair<Point, Point>>& breaks, const Rational& from, const Rational& to);

    const Segment& source() const { return source_; }
    const Segment& target() const { return target_; }
    const std::vector<SidePiece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    /// Visible target-parameter range from source.at(t), if any. Values a
    /// rounding step outside a piece snap to its end.
    std::optional<std::pair<Rational, Rational>> evaluate(const Rational& t) const;
    /// Source parameters whose visible range contains [a, b].
    std::vector<std::pair<Rational, Rational>> covering(const Rational& a, const Rational& b) const;

private:
    std::optional<Rational> apply(const EndRule& rule, const Point& viewer) const;
    void add_piece(const SimplePolygon& poly, const Rational& a, const Rational& b, int depth);

    Segment source_;
    Segment target_;
    std::vector<SidePiece> pieces_;
};

/// Pair of position ranges (target parameters and arc lengths) that see
/// each other completely.
struct Wedge {
    Rational q_lo{0}, q_hi{0};  ///< parameters on s1
    Rational r_lo{0}, r_hi{0};  ///< parameters on s2
    Interval q_range;           ///< arc lengths on s1
    Interval r_range;           ///< arc lengths on s2
    Pivot lo_pivot;             ///< rules bounding the wedge on s2
    Pivot hi_pivot;
};

struct SegmentVisStructure {
    Segment s1;
    Segment s2;
    double unit = 1.0;
    VisibilityGlass glass;
    SideMap q_side;  ///< viewer on s1, target s2
    SideMap r_side;  ///< viewer on s2, target s1
    std::vector<Wedge> wedges;
    EndpointTree<std::size_t> tree_q;           ///< wedge q ranges (arc length)
    EndpointTree<std::size_t> tree_r;           ///< wedge r ranges (arc length)
    EndpointTree<std::size_t> tree_q_velocity;  ///< same, divided by unit
    EndpointTree<std::size_t> tree_r_velocity;

    bool empty() const { return glass.empty; }
    /// Visible arc-length interval on the other segment from arc length
    /// `pos` on the viewer's own segment.
    std::optional<Interval> visible_from(Entity viewer, double pos) const;
    /// Wedges whose range for `viewer` contains arc length `pos`.
    std::vector<std::size_t> wedges_at(Entity viewer, double pos) const;
};

SegmentVisStructure build_segment_structure(const SimplePolygon& poly, const Segment& s1, const Segment& s2,
                                            double unit = 1.0);
SegmentVisStructure build_segment_structure(const PathFinder& paths, const Segment& s1, const Segment& s2,
                                            double unit = 1.0);

/// Answer of the fixed-velocity query: each viewer sits at velocity * unit.
struct PositionAnswer {
    double q_pos = 0.0;
    double r_pos = 0.0;
    IntervalSet r_visible;  ///< arc lengths on s2 seen from q
    IntervalSet q_visible;  ///< arc lengths on s1 seen from r
    bool mutually_visible = false;
};

/// Throws std::domain_error when a position falls outside its segment and
/// std::invalid_argument for a non-positive speed.
PositionAnswer query_positions(const SegmentVisStructure& s, double c0, double c1);

/// Speeds placing q where it sees all of `r_target`, and r where it sees
/// all of `q_target` (arc-length ranges on s2 and s1).
struct RangeAnswer {
    std::vector<VelocityRange> q_velocities;
    std::vector<VelocityRange> r_velocities;
};

RangeAnswer query_velocities(const SegmentVisStructure& s, const Interval& q_target, const Interval& r_target);

struct ConnectingVertices {
    bool ok = false;
    std::string reason;  ///< why general mode is required, when !ok
    std::size_t q1 = 0, r1 = 0;  ///< upper pair (vertex indices)
    std::size_t q2 = 0, r2 = 0;  ///< lower pair
    Point vq1, vr1, vq2, vr2;
    std::vector<std::string> trace;
};

/// Angular scan over the trajectory vertices. Restarts around a blocking
/// reflex vertex when a candidate pair is hidden.
ConnectingVertices scan_connecting_vertices(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr);
ConnectingVertices scan_connecting_vertices(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr);

/// Both pairs visible, and every visible vertex pair lies within the index
/// ranges spanned by the connecting vertices.
bool certificate_holds(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                       const ConnectingVertices& cv);

struct Cell {
    std::vector<Point> region;  ///< counterclockwise ring
    Entity entity = Entity::q;  ///< owner of the upper point
    std::size_t vertex = 0;
    Point upper_point;
    std::vector<std::size_t> q_vertices;
    std::vector<std::size_t> r_vertices;

    Rational area2() const;
};

struct EdgePairStructure {
    std::size_t q_edge = 0;
    std::size_t r_edge = 0;
    SegmentVisStructure seg;
};

/// Visible sub-trajectory of the other entity with the speeds reaching it.
struct VelocityAnswer {
    Interval sub;  ///< arc lengths on the other trajectory
    VelocityRange velocities;
    std::size_t cell = 0;  ///< cell owning the viewer position
};

struct GeneralVisStructure {
    enum class Mode { complete_visibility, total_invisibility, segment, restricted, general };
    Mode mode = Mode::general;
    SimplePolygon polygon;
    Trajectory tq;
    Trajectory tr;
    double unit = 1.0;
    std::optional<ConnectingVertices> connecting;
    std::vector<Cell> cells;
    std::vector<EdgePairStructure> pairs;
    IntervalSet vis_q;  ///< arc lengths of tq seen from some point of tr
    IntervalSet vis_r;
    std::vector<double> q_vertex_arcs;  ///< sorted arc lengths of vertices
    std::vector<double> r_vertex_arcs;

    std::size_t owning_cell(const Point& p) const;
};

const char* to_string(GeneralVisStructure::Mode mode);

/// Single-cell structure for the restricted regime.
GeneralVisStructure build_restricted_structure(const SimplePolygon& poly, const Trajectory& tq,
                                               const Trajectory& tr, const ConnectingVertices& cv, double unit = 1.0);
/// Cell decomposition by visibility polygons of upper points.
GeneralVisStructure build_general_structure(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                                            double unit = 1.0);
/// Selection policy: complete visibility, total invisibility, single
/// segments, restricted regime, general fallback.
GeneralVisStructure build_structure(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                                    double unit = 1.0);

/// Viewer `entity` moving at speed v sits at arc length v * unit. Throws
/// std::invalid_argument for v <= 0; a position past the trajectory end
/// gives an empty answer.
std::vector<VelocityAnswer> query_velocity(const GeneralVisStructure& s, Entity entity, double v);

}  // namespace polyvis

#endif  // POLYVIS_TRAJVIS_HPP
