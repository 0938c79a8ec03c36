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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polyvis/trajvis.hpp"

namespace polyvis {

namespace {

struct Tagged {
    Entity entity = Entity::q;
    std::size_t index = 0;
    Point p;
};

std::string describe(const Tagged& v) {
    return std::string(v.entity == Entity::q ? "q" : "r") + std::to_string(v.index) + " (" + to_string(v.p.x()) +
           ", " + to_string(v.p.y()) + ")";
}

std::string describe(const Point& p) { return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")"; }

std::vector<Tagged> tag_vertices(const Trajectory& tq, const Trajectory& tr) {
    std::vector<Tagged> out;
    for (std::size_t i = 0; i < tq.size(); ++i)
        out.push_back({Entity::q, i, tq.vertex(i)});
    for (std::size_t i = 0; i < tr.size(); ++i)
        out.push_back({Entity::r, i, tr.vertex(i)});
    return out;
}

/// Indices of `pts` in counterclockwise angular order around `c`, nearer
/// first on equal angles; points equal to `c` come first.
std::vector<std::size_t> angular_order(const std::vector<Tagged>& pts, const Point& c) {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto half = [&](const Point& p) {
        if (p == c)
            return -1;
        Rational dy = p.y() - c.y();
        return (dy > 0 || (dy == 0 && p.x() > c.x())) ? 0 : 1;
    };
    auto dist2 = [&](const Point& p) {
        Rational dx = p.x() - c.x(), dy = p.y() - c.y();
        return Rational(dx * dx + dy * dy);
    };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        const Point& a = pts[i].p;
        const Point& b = pts[j].p;
        int ha = half(a), hb = half(b);
        if (ha != hb)
            return ha < hb;
        if (ha < 0)
            return false;
        int o = orient_sign(c, a, b);
        if (o != 0)
            return o > 0;
        return dist2(a) < dist2(b);
    });
    return idx;
}

/// Drops repeated and collinear vertices of a ring.
std::vector<Point> clean_ring(std::vector<Point> ring) {
    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
            const std::size_t n = ring.size();
            const Point& a = ring[(i + n - 1) % n];
            const Point& b = ring[i];
            const Point& c = ring[(i + 1) % n];
            if (a == b || orient_sign(a, b, c) == 0) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return ring;
}

std::optional<std::pair<std::size_t, Rational>> boundary_position(const SimplePolygon& poly, const Point& p) {
    for (std::size_t j = 0; j < poly.size(); ++j)
        if (poly.vertex(j) == p)
            return std::make_pair(j, Rational(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
        const Point& a = poly.vertex(j);
        const Point& b = poly.vertex(j + 1);
        if (orient_sign(a, b, p) == 0 && on_segment(p, a, b))
            return std::make_pair(j, param_on(a, b, p));
    }
    return std::nullopt;
}

bool on_one_edge(const SimplePolygon& poly, const Point& u, const Point& w) {
    for (std::size_t j = 0; j < poly.size(); ++j) {
        const Point& a = poly.vertex(j);
        const Point& b = poly.vertex(j + 1);
        if (orient_sign(a, b, u) == 0 && orient_sign(a, b, w) == 0 && on_segment(u, a, b) && on_segment(w, a, b))
            return true;
    }
    return false;
}

/// Regions of `poly` hidden from the visibility polygon, one per window.
std::vector<SimplePolygon> pockets(const SimplePolygon& poly, const VisPolygon& vp) {
    std::vector<SimplePolygon> out;
    const auto& ring = vp.region;
    const std::size_t k = ring.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Point& w0 = ring[i];
        const Point& w1 = ring[(i + 1) % k];
        if (on_one_edge(poly, w0, w1))
            continue;
        auto p0 = boundary_position(poly, w0);
        auto p1 = boundary_position(poly, w1);
        if (!p0 || !p1)
            continue;
        auto [e0, t0] = *p0;
        auto [e1, t1] = *p1;
        if (e0 == e1 && t1 > t0)
            continue;
        std::vector<Point> pocket{w0};
        std::size_t j = e0;
        do {
            j = (j + 1) % poly.size();
            pocket.push_back(poly.vertex(j));
        } while (j != e1);
        pocket.push_back(w1);
        pocket = clean_ring(std::move(pocket));
        if (pocket.size() < 3 || signed_area2(pocket) <= 0)
            continue;
        try {
            out.emplace_back(std::move(pocket));
        } catch (const ValidationError&) {
        }
    }
    return out;
}

bool sees_other(const SimplePolygon& poly, const Tagged& v, const Trajectory& tq, const Trajectory& tr) {
    const Trajectory& other = v.entity == Entity::q ? tr : tq;
    for (const Point& w : other.vertices())
        if (sees(poly, v.p, w))
            return true;
    return false;
}

void partition(const SimplePolygon& region, std::vector<Tagged> members, const SimplePolygon& poly,
               const Trajectory& tq, const Trajectory& tr, std::vector<Cell>& cells) {
    if (members.empty())
        return;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (sees_other(poly, members[i], tq, tr)) {
            pick = i;
            break;
        }
    }
    const Tagged u = members[pick];
    VisPolygon vp = visibility_polygon(region, u.p);
    const std::size_t id = cells.size();
    cells.push_back({});
    cells[id].region = vp.region;
    cells[id].entity = u.entity;
    cells[id].vertex = u.index;
    cells[id].upper_point = u.p;

    std::vector<char> taken(members.size(), 0);
    auto assign = [&](std::size_t i) {
        taken[i] = 1;
        (members[i].entity == Entity::q ? cells[id].q_vertices : cells[id].r_vertices).push_back(members[i].index);
    };
    for (std::size_t i = 0; i < members.size(); ++i)
        if (i == pick || vp.contains(members[i].p))
            assign(i);
    for (const SimplePolygon& pocket : pockets(region, vp)) {
        std::vector<Tagged> inside;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (!taken[i] && locate(members[i].p, pocket) != Location::exterior) {
                taken[i] = 1;
                inside.push_back(members[i]);
            }
        }
        partition(pocket, std::move(inside), poly, tq, tr, cells);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        if (!taken[i])
            assign(i);
}

GeneralVisStructure base_structure(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr, double unit,
                                   bool with_pairs) {
    if (!(unit > 0.0))
        throw std::invalid_argument("time unit must be positive");
    GeneralVisStructure s;
    s.polygon = paths.polygon();
    s.tq = tq;
    s.tr = tr;
    s.unit = unit;
    for (std::size_t i = 0; i < tq.size(); ++i)
        s.q_vertex_arcs.push_back(tq.cumulative(i));
    for (std::size_t i = 0; i < tr.size(); ++i)
        s.r_vertex_arcs.push_back(tr.cumulative(i));
    if (!with_pairs)
        return s;
    for (std::size_t i = 0; i < tq.edge_count(); ++i) {
        for (std::size_t j = 0; j < tr.edge_count(); ++j) {
            auto seg = build_segment_structure(paths, tq.edge(i), tr.edge(j), unit);
            if (seg.empty())
                continue;
            s.vis_q.push_back({tq.cumulative(i) + seg.glass.s1_lo.get_d() * tq.edge_length(i),
                               tq.cumulative(i) + seg.glass.s1_hi.get_d() * tq.edge_length(i)});
            s.vis_r.push_back({tr.cumulative(j) + seg.glass.s2_lo.get_d() * tr.edge_length(j),
                               tr.cumulative(j) + seg.glass.s2_hi.get_d() * tr.edge_length(j)});
            s.pairs.push_back({i, j, std::move(seg)});
        }
    }
    s.vis_q = normalize(std::move(s.vis_q), 1e-9);
    s.vis_r = normalize(std::move(s.vis_r), 1e-9);
    return s;
}

Cell whole_cell(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr, Entity entity,
                std::size_t vertex) {
    Cell c;
    c.region = poly.vertices();
    c.entity = entity;
    c.vertex = vertex;
    c.upper_point = entity == Entity::q ? tq.vertex(vertex) : tr.vertex(vertex);
    c.q_vertices.resize(tq.size());
    std::iota(c.q_vertices.begin(), c.q_vertices.end(), std::size_t{0});
    c.r_vertices.resize(tr.size());
    std::iota(c.r_vertices.begin(), c.r_vertices.end(), std::size_t{0});
    return c;
}

}  // namespace

bool certificate_holds(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                       const ConnectingVertices& cv) {
    if (cv.q1 >= tq.size() || cv.q2 >= tq.size() || cv.r1 >= tr.size() || cv.r2 >= tr.size())
        return false;
    if (!sees(poly, tq.vertex(cv.q1), tr.vertex(cv.r1)) || !sees(poly, tq.vertex(cv.q2), tr.vertex(cv.r2)))
        return false;
    const auto [qlo, qhi] = std::minmax(cv.q1, cv.q2);
    const auto [rlo, rhi] = std::minmax(cv.r1, cv.r2);
    for (std::size_t i = 0; i < tq.size(); ++i) {
        for (std::size_t j = 0; j < tr.size(); ++j) {
            bool inside = i >= qlo && i <= qhi && j >= rlo && j <= rhi;
            if (!inside && sees(poly, tq.vertex(i), tr.vertex(j)))
                return false;
        }
    }
    return true;
}

ConnectingVertices scan_connecting_vertices(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr) {
    ConnectingVertices cv;
    const SimplePolygon& poly = paths.polygon();
    const std::vector<Tagged> verts = tag_vertices(tq, tr);
    const std::size_t n = verts.size();

    auto sp = find_starting_point(paths, tq, tr);
    std::size_t start = 0;
    if (sp.kind == StartingPoint::Kind::start)
        start = sp.entity == Entity::q ? sp.vertex_index : tq.size() + sp.vertex_index;
    cv.trace.push_back("start " + describe(verts[start]));

    Rational cx(0), cy(0);
    for (const Tagged& v : verts) {
        cx += v.p.x();
        cy += v.p.y();
    }
    cx /= static_cast<long>(n);
    cy /= static_cast<long>(n);
    Point center(cx, cy);

    bool reversed = false;
    auto make_order = [&] {
        auto order = angular_order(verts, center);
        auto it = std::find(order.begin(), order.end(), start);
        std::rotate(order.begin(), it, order.end());
        if (reversed)
            std::reverse(order.begin() + 1, order.end());
        return order;
    };

    std::vector<std::size_t> order = make_order();
    if (verts[order[1]].entity != verts[start].entity && sees(poly, verts[start].p, verts[order[1]].p)) {
        reversed = true;
        start = order[1];
        cv.trace.push_back("first pair visible; reverse and start at " + describe(verts[start]));
        order = make_order();
    }

    std::vector<std::pair<std::size_t, std::size_t>> switches;  // positions k, k + 1 in order
    std::vector<Point> centers;
    bool resolved = false;
    for (std::size_t round = 0; round <= poly.size() && !resolved; ++round) {
        switches.clear();
        for (std::size_t k = 0; k < n; ++k)
            if (verts[order[k]].entity != verts[order[(k + 1) % n]].entity)
                switches.emplace_back(k, (k + 1) % n);
        if (switches.size() != 2) {
            cv.reason = "scan found " + std::to_string(switches.size()) + " entity switches";
            cv.trace.push_back(cv.reason);
            return cv;
        }
        resolved = true;
        for (auto [ka, kb] : switches) {
            const Tagged& a = verts[order[ka]];
            const Tagged& b = verts[order[kb]];
            if (sees(poly, a.p, b.p)) {
                cv.trace.push_back("visible pair " + describe(a) + " " + describe(b));
                continue;
            }
            resolved = false;
            auto path = paths.shortest_path(a.p, b.p);
            const Point blocker = path.waypoints.size() > 2 ? path.waypoints[1] : a.p;
            cv.trace.push_back("hidden pair " + describe(a) + " " + describe(b) + " blocked at " + describe(blocker));
            if (std::find(centers.begin(), centers.end(), blocker) != centers.end()) {
                cv.trace.push_back("blocker seen before; searching the runs");
                round = poly.size();
                break;
            }
            centers.push_back(blocker);
            center = blocker;
            cv.trace.push_back("restart at " + describe(blocker));
            order = make_order();
            break;
        }
    }

    switches.clear();
    for (std::size_t k = 0; k < n; ++k)
        if (verts[order[k]].entity != verts[order[(k + 1) % n]].entity)
            switches.emplace_back(k, (k + 1) % n);
    if (switches.size() != 2) {
        cv.reason = "scan found " + std::to_string(switches.size()) + " entity switches";
        cv.trace.push_back(cv.reason);
        return cv;
    }
    // Pair per switch: the switch itself, else the nearest visible pair
    // inside the two runs meeting there.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto [ka, kb] : switches) {
        const Entity ea = verts[order[ka]].entity;
        const Entity eb = verts[order[kb]].entity;
        std::vector<std::size_t> back, fwd;
        for (std::size_t k = ka, c = 0; c < n && verts[order[k]].entity == ea; k = (k + n - 1) % n, ++c)
            back.push_back(order[k]);
        for (std::size_t k = kb, c = 0; c < n && verts[order[k]].entity == eb; k = (k + 1) % n, ++c)
            fwd.push_back(order[k]);
        bool found = false;
        for (std::size_t s = 0; s + 2 <= back.size() + fwd.size() && !found; ++s) {
            for (std::size_t i = 0; i <= s && !found; ++i) {
                std::size_t j = s - i;
                if (i >= back.size() || j >= fwd.size())
                    continue;
                if (sees(poly, verts[back[i]].p, verts[fwd[j]].p)) {
                    pairs.emplace_back(back[i], fwd[j]);
                    found = true;
                }
            }
        }
        if (!found) {
            cv.reason = "no visible pair around switch " + describe(verts[order[ka]]);
            cv.trace.push_back(cv.reason);
            return cv;
        }
    }
    auto assign = [&](std::pair<std::size_t, std::size_t> pr, std::size_t& qi, std::size_t& ri) {
        const Tagged& a = verts[pr.first];
        const Tagged& b = verts[pr.second];
        qi = a.entity == Entity::q ? a.index : b.index;
        ri = a.entity == Entity::q ? b.index : a.index;
    };
    assign(pairs[0], cv.q1, cv.r1);
    assign(pairs[1], cv.q2, cv.r2);
    // upper pair: the one met first along tau_q
    if (std::tie(cv.q2, cv.r2) < std::tie(cv.q1, cv.r1)) {
        std::swap(cv.q1, cv.q2);
        std::swap(cv.r1, cv.r2);
    }
    cv.vq1 = tq.vertex(cv.q1);
    cv.vr1 = tr.vertex(cv.r1);
    cv.vq2 = tq.vertex(cv.q2);
    cv.vr2 = tr.vertex(cv.r2);
    cv.trace.push_back("upper q" + std::to_string(cv.q1) + " r" + std::to_string(cv.r1) + ", lower q" +
                       std::to_string(cv.q2) + " r" + std::to_string(cv.r2));
    cv.ok = certificate_holds(poly, tq, tr, cv);
    if (!cv.ok) {
        cv.reason = "certificate failed";
        cv.trace.push_back(cv.reason);
    }
    return cv;
}

ConnectingVertices scan_connecting_vertices(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr) {
    PathFinder paths(poly);
    return scan_connecting_vertices(paths, tq, tr);
}

Rational Cell::area2() const { return signed_area2(region); }

std::size_t GeneralVisStructure::owning_cell(const Point& p) const {
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (locate(p, std::span<const Point>(cells[i].region)) != Location::exterior)
            return i;
    return 0;
}

const char* to_string(GeneralVisStructure::Mode mode) {
    switch (mode) {
    case GeneralVisStructure::Mode::complete_visibility:
        return "complete-visibility";
    case GeneralVisStructure::Mode::total_invisibility:
        return "total-invisibility";
    case GeneralVisStructure::Mode::segment:
        return "segment";
    case GeneralVisStructure::Mode::restricted:
        return "restricted";
    case GeneralVisStructure::Mode::general:
        return "general";
    }
    return "general";
}

GeneralVisStructure build_restricted_structure(const SimplePolygon& poly, const Trajectory& tq,
                                               const Trajectory& tr, const ConnectingVertices& cv, double unit) {
    PathFinder paths(poly);
    GeneralVisStructure s = base_structure(paths, tq, tr, unit, true);
    s.mode = GeneralVisStructure::Mode::restricted;
    s.connecting = cv;
    s.cells.push_back(whole_cell(poly, tq, tr, Entity::q, cv.q1));
    return s;
}

GeneralVisStructure build_general_structure(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                                            double unit) {
    PathFinder paths(poly);
    GeneralVisStructure s = base_structure(paths, tq, tr, unit, true);
    s.mode = GeneralVisStructure::Mode::general;
    partition(poly, tag_vertices(tq, tr), poly, tq, tr, s.cells);
    return s;
}

GeneralVisStructure build_structure(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                                    double unit) {
    PathFinder paths(poly);
    if (completely_visible(poly, tq, tr)) {
        GeneralVisStructure s = base_structure(paths, tq, tr, unit, true);
        s.mode = GeneralVisStructure::Mode::complete_visibility;
        s.cells.push_back(whole_cell(poly, tq, tr, Entity::q, 0));
        return s;
    }
    if (totally_invisible(paths, tq, tr)) {
        GeneralVisStructure s = base_structure(paths, tq, tr, unit, false);
        s.mode = GeneralVisStructure::Mode::total_invisibility;
        s.cells.push_back(whole_cell(poly, tq, tr, Entity::q, 0));
        return s;
    }
    if (tq.edge_count() == 1 && tr.edge_count() == 1) {
        GeneralVisStructure s = base_structure(paths, tq, tr, unit, true);
        s.mode = GeneralVisStructure::Mode::segment;
        s.cells.push_back(whole_cell(poly, tq, tr, Entity::q, 0));
        return s;
    }
    ConnectingVertices cv = scan_connecting_vertices(paths, tq, tr);
    GeneralVisStructure s = base_structure(paths, tq, tr, unit, true);
    if (cv.ok) {
        s.mode = GeneralVisStructure::Mode::restricted;
        s.cells.push_back(whole_cell(poly, tq, tr, Entity::q, cv.q1));
    } else {
        s.mode = GeneralVisStructure::Mode::general;
        partition(poly, tag_vertices(tq, tr), poly, tq, tr, s.cells);
    }
    s.connecting = std::move(cv);
    return s;
}

std::vector<VelocityAnswer> query_velocity(const GeneralVisStructure& s, Entity entity, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("velocity must be positive");
    std::vector<VelocityAnswer> out;
    const Trajectory& own = entity == Entity::q ? s.tq : s.tr;
    const Trajectory& other = entity == Entity::q ? s.tr : s.tq;
    const IntervalSet& vis = entity == Entity::q ? s.vis_q : s.vis_r;
    double pos = v * s.unit;
    if (pos > own.length() + kLengthTolerance)
        return out;
    pos = std::min(pos, own.length());
    // predecessor among the visible stretches
    auto it = std::upper_bound(vis.begin(), vis.end(), pos, [](double x, const Interval& iv) { return x < iv.lo; });
    if (it == vis.begin() || std::prev(it)->hi + kLengthTolerance < pos)
        return out;

    TrajPosition at = own.position_at(pos);
    std::vector<std::pair<std::size_t, Rational>> spots{{at.edge, at.fraction}};
    if (at.fraction == 0 && at.edge > 0)
        spots.emplace_back(at.edge - 1, Rational(1));
    IntervalSet found;
    for (const EdgePairStructure& pr : s.pairs) {
        const std::size_t own_edge = entity == Entity::q ? pr.q_edge : pr.r_edge;
        const std::size_t other_edge = entity == Entity::q ? pr.r_edge : pr.q_edge;
        const SideMap& side = entity == Entity::q ? pr.seg.q_side : pr.seg.r_side;
        for (const auto& [edge, t] : spots) {
            if (edge != own_edge)
                continue;
            auto ev = side.evaluate(t);
            if (!ev)
                continue;
            double base = other.cumulative(other_edge);
            double len = other.edge_length(other_edge);
            found.push_back({base + ev->first.get_d() * len, base + ev->second.get_d() * len});
        }
    }
    found = normalize(std::move(found), 1e-9);
    const std::size_t cell = s.owning_cell(own.point_at(at));
    for (const Interval& iv : found)
        out.push_back({iv, {iv.lo / s.unit, iv.hi / s.unit}, cell});
    return out;
}

}  // namespace polyvis
