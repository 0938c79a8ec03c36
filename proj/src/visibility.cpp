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

#include "polyvis/visibility.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace polyvis {

namespace {

Rational cross(const Point& o, const Point& a, const Point& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Open parameter interval on the host, possibly unbounded.
struct Shadow {
    bool lo_inf = true, hi_inf = true;
    Rational lo, hi;
    Pivot lo_pivot, hi_pivot;
};

/// Restricts `s` to { u : sigma * f(u) > 0 } with f affine, f(0)=f0, f(1)=f1.
/// Returns false when the restriction is empty.
bool restrict(Shadow& s, const Rational& f0, const Rational& f1, int sigma, const Pivot& pivot) {
    Rational g0 = sigma > 0 ? f0 : Rational(-f0);
    Rational g1 = sigma > 0 ? f1 : Rational(-f1);
    if (g0 == g1)
        return g0 > 0;
    Rational r = g0 / (g0 - g1);
    if (g1 > g0) {
        if (s.lo_inf || r > s.lo) {
            s.lo = r;
            s.lo_inf = false;
            s.lo_pivot = pivot;
        }
    } else {
        if (s.hi_inf || r < s.hi) {
            s.hi = r;
            s.hi_inf = false;
            s.hi_pivot = pivot;
        }
    }
    return s.lo_inf || s.hi_inf || s.lo < s.hi;
}

VisibleInterval collinear_interval(const SimplePolygon& poly, const Point& viewer, const Segment& host) {
    std::vector<std::pair<Rational, Pivot>> cands;
    cands.emplace_back(Rational(0), Pivot{Pivot::Kind::fixed, host.a});
    cands.emplace_back(Rational(1), Pivot{Pivot::Kind::fixed, host.b});
    Rational uv = param_on(host.a, host.b, viewer);
    if (uv > 0 && uv < 1)
        cands.emplace_back(uv, Pivot{Pivot::Kind::fixed, viewer});
    for (const Point& w : poly.vertices()) {
        if (orient_sign(host.a, host.b, w) != 0)
            continue;
        Rational u = param_on(host.a, host.b, w);
        if (u > 0 && u < 1)
            cands.emplace_back(u, Pivot{Pivot::Kind::vertex, w});
    }
    std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    VisibleInterval out;
    for (const auto& [u, piv] : cands) {
        if (!sees(poly, viewer, host.at(u)))
            continue;
        if (out.empty) {
            out.empty = false;
            out.lo = u;
            out.lo_pivot = piv;
        }
        out.hi = u;
        out.hi_pivot = piv;
    }
    return out;
}

}  // namespace

VisibleInterval visible_interval(const SimplePolygon& poly, const Point& viewer, const Segment& host) {
    if (orient_sign(viewer, host.a, host.b) == 0)
        return collinear_interval(poly, viewer, host);
    std::vector<Shadow> shadows;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly.vertex(i);
        const Point& b = poly.vertex(i + 1);
        int vab = orient_sign(viewer, a, b);
        if (vab == 0)
            continue;
        Shadow s;
        // x strictly inside the wedge at the viewer spanned by a and b ...
        if (!restrict(s, cross(viewer, a, host.a), cross(viewer, a, host.b), vab, {Pivot::Kind::vertex, a}))
            continue;
        if (!restrict(s, cross(viewer, b, host.a), cross(viewer, b, host.b), -vab, {Pivot::Kind::vertex, b}))
            continue;
        // ... and strictly beyond the edge line.
        int abv = orient_sign(a, b, viewer);
        Shadow before = s;
        if (!restrict(s, cross(a, b, host.a), cross(a, b, host.b), -abv, {Pivot::Kind::fixed, a}))
            continue;
        if (!s.lo_inf && (before.lo_inf || s.lo != before.lo))
            s.lo_pivot = {Pivot::Kind::fixed, host.at(s.lo)};
        if (!s.hi_inf && (before.hi_inf || s.hi != before.hi))
            s.hi_pivot = {Pivot::Kind::fixed, host.at(s.hi)};
        if ((!s.hi_inf && s.hi <= 0) || (!s.lo_inf && s.lo >= 1))
            continue;
        shadows.push_back(std::move(s));
    }
    std::sort(shadows.begin(), shadows.end(), [](const Shadow& x, const Shadow& y) {
        if (x.lo_inf != y.lo_inf)
            return x.lo_inf;
        return !x.lo_inf && x.lo < y.lo;
    });

    struct Piece {
        Rational lo, hi;
        Pivot lo_pivot, hi_pivot;
    };
    std::vector<Piece> pieces;
    Rational cur = 0;
    Pivot cur_pivot{Pivot::Kind::fixed, host.a};
    bool done = false;
    for (const Shadow& s : shadows) {
        if (!s.lo_inf && s.lo >= cur) {
            if (cur <= 1) {
                if (s.lo >= 1)
                    break;
                pieces.push_back({cur, s.lo, cur_pivot, s.lo_pivot});
            }
        }
        if (s.hi_inf) {
            done = true;
            break;
        }
        if (s.hi > cur) {
            cur = s.hi;
            cur_pivot = s.hi_pivot;
        }
    }
    if (!done && cur <= 1)
        pieces.push_back({cur, Rational(1), cur_pivot, Pivot{Pivot::Kind::fixed, host.b}});

    VisibleInterval out;
    const Piece* chosen = nullptr;
    for (const Piece& p : pieces) {
        if (p.lo < p.hi) {
            chosen = &p;
            break;
        }
    }
    if (!chosen) {
        // Only isolated candidates remain; they may be sightlines that leave
        // the polygon through vertices only.
        for (const Piece& p : pieces) {
            if (sees(poly, viewer, host.at(p.lo))) {
                chosen = &p;
                break;
            }
        }
    }
    if (!chosen)
        return out;
    out.empty = false;
    out.lo = chosen->lo;
    out.hi = chosen->hi;
    out.lo_pivot = chosen->lo_pivot;
    out.hi_pivot = chosen->hi_pivot;
    return out;
}

Rational VisPolygon::area2() const {
    return signed_area2(region);
}

bool VisPolygon::contains(const Point& p) const {
    return locate(p, std::span<const Point>(region)) != Location::exterior;
}

namespace {

int half_plane(const Point& o, const Point& a) {
    int sy = compare_y(a, o);
    int sx = compare_x(a, o);
    return (sy > 0 || (sy == 0 && sx > 0)) ? 0 : 1;
}

/// Angular order around o, counterclockwise from the +x direction.
bool angle_before(const Point& o, const Point& a, const Point& b) {
    int ha = half_plane(o, a), hb = half_plane(o, b);
    if (ha != hb)
        return ha < hb;
    return orient_sign(o, a, b) > 0;
}

bool same_direction(const Point& o, const Point& a, const Point& b) {
    if (orient_sign(o, a, b) != 0)
        return false;
    Rational dot = (a.x() - o.x()) * (b.x() - o.x()) + (a.y() - o.y()) * (b.y() - o.y());
    return dot > 0;
}

std::vector<Point> clean_ring(std::vector<Point> ring) {
    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        std::vector<Point> next;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (!next.empty() && next.back() == ring[i])
                continue;
            next.push_back(ring[i]);
        }
        while (next.size() > 1 && next.front() == next.back())
            next.pop_back();
        ring.swap(next);
        for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
            const std::size_t k = ring.size();
            if (orient_sign(ring[(i + k - 1) % k], ring[i], ring[(i + 1) % k]) == 0) {
                ring.erase(ring.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    return ring;
}

}  // namespace

VisPolygon visibility_polygon(const PathFinder& paths, const Point& p) {
    const SimplePolygon& poly = paths.polygon();
    const Triangulation& tri = paths.triangulation();
    Location where = locate(p, poly);
    if (where == Location::exterior)
        throw std::domain_error("viewpoint outside the polygon");

    struct Piece {
        Point a, b;
    };
    std::vector<Piece> pieces;
    std::function<void(std::size_t, int, const Point&, const Point&)> process;
    process = [&](std::size_t t, int k, const Point& cl, const Point& cr) {
        const Triangle& T = tri.triangles[t];
        const Point& a = poly.vertex(T.v[k]);
        const Point& b = poly.vertex(T.v[(k + 1) % 3]);
        if (orient_sign(a, b, p) <= 0)
            return;
        const Point& start = orient_sign(p, a, cl) > 0 ? cl : a;
        const Point& end = orient_sign(p, b, cr) < 0 ? cr : b;
        if (orient_sign(p, start, end) <= 0)
            return;
        int nb = T.neighbor[k];
        if (nb < 0) {
            auto x = line_intersection(p, start, a, b);
            auto y = line_intersection(p, end, a, b);
            pieces.push_back({*x, *y});
            return;
        }
        const Triangle& N = tri.triangles[static_cast<std::size_t>(nb)];
        int kk = 0;
        for (; kk < 3; ++kk) {
            if (N.neighbor[kk] == static_cast<int>(t))
                break;
        }
        Point s = start, e = end;
        process(static_cast<std::size_t>(nb), (kk + 1) % 3, s, e);
        process(static_cast<std::size_t>(nb), (kk + 2) % 3, s, e);
    };
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        const Triangle& T = tri.triangles[t];
        const Point& a = poly.vertex(T.v[0]);
        const Point& b = poly.vertex(T.v[1]);
        const Point& c = poly.vertex(T.v[2]);
        int o1 = orient_sign(a, b, p), o2 = orient_sign(b, c, p), o3 = orient_sign(c, a, p);
        if (o1 < 0 || o2 < 0 || o3 < 0 || (o1 == 0 && o2 == 0 && o3 == 0))
            continue;
        for (int k = 0; k < 3; ++k) {
            const Point& u = poly.vertex(T.v[k]);
            const Point& w = poly.vertex(T.v[(k + 1) % 3]);
            process(t, k, u, w);
        }
    }
    std::sort(pieces.begin(), pieces.end(), [&](const Piece& x, const Piece& y) { return angle_before(p, x.a, y.a); });

    VisPolygon vp;
    vp.kernel_point = p;
    std::size_t first = 0;
    bool gap = false;
    if (where == Location::boundary && !pieces.empty()) {
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const Piece& cur = pieces[i];
            const Piece& nxt = pieces[(i + 1) % pieces.size()];
            if (!same_direction(p, cur.b, nxt.a)) {
                first = (i + 1) % pieces.size();
                gap = true;
                break;
            }
        }
    }
    std::vector<Point> ring;
    if (gap)
        ring.push_back(p);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& piece = pieces[(first + i) % pieces.size()];
        ring.push_back(piece.a);
        ring.push_back(piece.b);
    }
    vp.region = clean_ring(std::move(ring));
    return vp;
}

VisPolygon visibility_polygon(const SimplePolygon& poly, const Point& p) {
    PathFinder paths(poly);
    return visibility_polygon(paths, p);
}

RayHit ray_shoot(const SimplePolygon& poly, const Point& origin, const Rational& dx, const Rational& dy) {
    if (dx == 0 && dy == 0)
        throw std::invalid_argument("zero ray direction");
    const Point ahead(origin.x() + dx, origin.y() + dy);
    std::vector<Rational> params;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly.vertex(i);
        const Point& b = poly.vertex(i + 1);
        int oa = orient_sign(origin, ahead, a);
        int ob = orient_sign(origin, ahead, b);
        if (oa == 0 && ob == 0) {
            for (const Point* w : {&a, &b}) {
                Rational s = param_on(origin, ahead, *w);
                if (s > 0)
                    params.push_back(s);
            }
            continue;
        }
        if (oa * ob > 0)
            continue;
        auto s = line_param(origin, ahead, a, b);
        if (s && *s > 0)
            params.push_back(*s);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    Rational reach = 0;
    for (const Rational& s : params) {
        Rational mid = (reach + s) / 2;
        if (locate(lerp(origin, ahead, mid), poly) == Location::exterior)
            break;
        reach = s;
    }
    RayHit out;
    out.hit = lerp(origin, ahead, reach);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (on_segment(out.hit, poly.vertex(i), poly.vertex(i + 1))) {
            out.edge = i;
            break;
        }
    }
    return out;
}

std::vector<Point> graham_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    auto pivot_it = std::min_element(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        int c = compare_y(a, b);
        return c < 0 || (c == 0 && compare_x(a, b) < 0);
    });
    std::iter_swap(pts.begin(), pivot_it);
    const Point pivot = pts[0];
    std::sort(pts.begin() + 1, pts.end(), [&](const Point& a, const Point& b) {
        int o = orient_sign(pivot, a, b);
        if (o != 0)
            return o > 0;
        return distance(pivot, a) < distance(pivot, b);
    });
    std::vector<Point> hull;
    for (const Point& p : pts) {
        while (hull.size() >= 2 && orient_sign(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

bool completely_visible(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr) {
    std::vector<Point> all = tq.vertices();
    all.insert(all.end(), tr.vertices().begin(), tr.vertices().end());
    auto hull = graham_hull(all);
    if (convex_region_inside(poly, hull))
        return true;
    for (std::size_t i = 0; i < tq.edge_count(); ++i) {
        for (std::size_t j = 0; j < tr.edge_count(); ++j) {
            auto quad = graham_hull({tq.vertex(i), tq.vertex(i + 1), tr.vertex(j), tr.vertex(j + 1)});
            if (!convex_region_inside(poly, quad))
                return false;
        }
    }
    return true;
}

bool totally_invisible(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr) {
    const SimplePolygon& poly = paths.polygon();
    for (const Point& a : tq.vertices()) {
        for (const Point& b : tr.vertices()) {
            if (sees(poly, a, b))
                return false;
        }
    }
    for (std::size_t i = 0; i < tq.edge_count(); ++i) {
        for (std::size_t j = 0; j < tr.edge_count(); ++j) {
            if (!visibility_glass(paths, tq.edge(i), tr.edge(j)).empty)
                return false;
        }
    }
    return true;
}

StartingPoint find_starting_point(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr) {
    const SimplePolygon& poly = paths.polygon();
    StartingPoint out;
    if (completely_visible(poly, tq, tr)) {
        out.kind = StartingPoint::Kind::complete_visibility;
        return out;
    }
    if (totally_invisible(paths, tq, tr)) {
        out.kind = StartingPoint::Kind::total_invisibility;
        return out;
    }
    struct Item {
        Entity entity;
        std::size_t index;
        const Point* p;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < tq.size(); ++i)
        items.push_back({Entity::q, i, &tq.vertex(i)});
    for (std::size_t i = 0; i < tr.size(); ++i)
        items.push_back({Entity::r, i, &tr.vertex(i)});
    auto sees_other = [&](const Item& it) {
        const Trajectory& other = it.entity == Entity::q ? tr : tq;
        for (const Point& w : other.vertices()) {
            if (sees(poly, *it.p, w))
                return true;
        }
        return false;
    };
    auto found = [&](const Item& it, bool gap) {
        out.kind = StartingPoint::Kind::start;
        out.entity = it.entity;
        out.vertex_index = it.index;
        out.vertex = *it.p;
        out.cover_gap = gap;
        return out;
    };

    std::vector<char> marked(items.size(), 0);
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (marked[i])
            continue;
        VisPolygon vp = visibility_polygon(paths, *items[i].p);
        const Trajectory& other = items[i].entity == Entity::q ? tr : tq;
        bool any = false;
        for (const Point& w : other.vertices())
            any |= vp.contains(w);
        if (!any)
            return found(items[i], false);
        for (std::size_t j = 0; j < items.size(); ++j) {
            if (j != i && vp.contains(*items[j].p))
                marked[j] = 1;
        }
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (marked[i] && !sees_other(items[i]))
            return found(items[i], true);
    }
    out.kind = StartingPoint::Kind::none;
    return out;
}

StartingPoint find_starting_point(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr) {
    PathFinder paths(poly);
    return find_starting_point(paths, tq, tr);
}

}  // namespace polyvis
