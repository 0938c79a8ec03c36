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

#include "polyvis/paths.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace polyvis {

namespace {

bool in_closed_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
    const double px = p.approx_x(), py = p.approx_y();
    const double slack = 1e-9 * (1.0 + std::fabs(px) + std::fabs(py));
    if (px < std::min({a.approx_x(), b.approx_x(), c.approx_x()}) - slack
        || px > std::max({a.approx_x(), b.approx_x(), c.approx_x()}) + slack
        || py < std::min({a.approx_y(), b.approx_y(), c.approx_y()}) - slack
        || py > std::max({a.approx_y(), b.approx_y(), c.approx_y()}) + slack)
        return false;
    int o1 = orient_sign(a, b, p);
    int o2 = orient_sign(b, c, p);
    int o3 = orient_sign(c, a, p);
    if (o1 == 0 && o2 == 0 && o3 == 0)
        return on_segment(p, a, b) || on_segment(p, b, c) || on_segment(p, c, a);
    return o1 >= 0 && o2 >= 0 && o3 >= 0;
}

}  // namespace

Triangulation triangulate(const SimplePolygon& poly) {
    const std::size_t n = poly.size();
    Triangulation out;
    std::vector<std::size_t> prev(n), next(n);
    for (std::size_t i = 0; i < n; ++i) {
        prev[i] = (i + n - 1) % n;
        next[i] = (i + 1) % n;
    }
    std::vector<char> alive(n, 1);
    std::vector<int> turn(n);
    auto update_turn = [&](std::size_t i) {
        turn[i] = orient_sign(poly.vertex(prev[i]), poly.vertex(i), poly.vertex(next[i]));
    };
    for (std::size_t i = 0; i < n; ++i)
        update_turn(i);
    std::vector<std::size_t> concave;
    for (std::size_t i = 0; i < n; ++i) {
        if (turn[i] <= 0)
            concave.push_back(i);
    }

    auto is_ear = [&](std::size_t i) {
        if (turn[i] <= 0)
            return false;
        const Point& a = poly.vertex(prev[i]);
        const Point& b = poly.vertex(i);
        const Point& c = poly.vertex(next[i]);
        for (std::size_t j : concave) {
            if (!alive[j] || turn[j] > 0 || j == prev[i] || j == i || j == next[i])
                continue;
            if (in_closed_triangle(poly.vertex(j), a, b, c))
                return false;
        }
        return true;
    };
    auto clip = [&](std::size_t i) {
        out.triangles.push_back(Triangle{{prev[i], i, next[i]}, {-1, -1, -1}});
        alive[i] = 0;
        next[prev[i]] = next[i];
        prev[next[i]] = prev[i];
        std::size_t p = prev[i], q = next[i];
        update_turn(p);
        update_turn(q);
        if (turn[p] <= 0)
            concave.push_back(p);
        if (turn[q] <= 0)
            concave.push_back(q);
    };

    std::size_t remaining = n;
    std::size_t cur = 0;
    std::size_t misses = 0;
    while (remaining > 3) {
        if (is_ear(cur)) {
            std::size_t after = next[cur];
            clip(cur);
            --remaining;
            cur = after;
            misses = 0;
            continue;
        }
        cur = next[cur];
        if (++misses > remaining) {
            // Only flat corners are left to remove; clip one as a degenerate ear.
            std::size_t flat = cur;
            bool found = false;
            for (std::size_t k = 0; k < remaining; ++k, flat = next[flat]) {
                if (turn[flat] == 0) {
                    found = true;
                    break;
                }
            }
            if (!found)
                throw std::logic_error("ear clipping stalled");
            std::size_t after = next[flat];
            clip(flat);
            --remaining;
            cur = after;
            misses = 0;
        }
    }
    out.triangles.push_back(Triangle{{prev[cur], cur, next[cur]}, {-1, -1, -1}});

    std::unordered_map<unsigned long long, std::pair<std::size_t, int>> edges;
    out.dual.assign(out.triangles.size(), {});
    for (std::size_t t = 0; t < out.triangles.size(); ++t) {
        for (int k = 0; k < 3; ++k) {
            std::size_t a = out.triangles[t].v[k];
            std::size_t b = out.triangles[t].v[(k + 1) % 3];
            if ((a + 1) % n == b || (b + 1) % n == a)
                continue;  // polygon edge
            unsigned long long key = static_cast<unsigned long long>(std::min(a, b)) * n + std::max(a, b);
            auto it = edges.find(key);
            if (it == edges.end()) {
                edges.emplace(key, std::make_pair(t, k));
            } else {
                auto [u, ku] = it->second;
                out.triangles[t].neighbor[k] = static_cast<int>(u);
                out.triangles[u].neighbor[ku] = static_cast<int>(t);
                out.dual[t].push_back(u);
                out.dual[u].push_back(t);
            }
        }
    }
    return out;
}

double GeodesicPath::length() const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
        acc += distance(waypoints[i], waypoints[i + 1]);
    return acc;
}

PathFinder::PathFinder(const SimplePolygon& poly)
    : poly_(&poly)
    , tri_(triangulate(poly))
{}

std::vector<std::size_t> PathFinder::containing_triangles(const Point& p) const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < tri_.triangles.size(); ++t) {
        const auto& v = tri_.triangles[t].v;
        if (in_closed_triangle(p, poly_->vertex(v[0]), poly_->vertex(v[1]), poly_->vertex(v[2])))
            out.push_back(t);
    }
    return out;
}

std::vector<int> PathFinder::tree_distances(std::size_t from) const {
    std::vector<int> dist(tri_.triangles.size(), -1);
    std::deque<std::size_t> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        std::size_t t = queue.front();
        queue.pop_front();
        for (std::size_t u : tri_.dual[t]) {
            if (dist[u] < 0) {
                dist[u] = dist[t] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

GeodesicPath PathFinder::shortest_path(const Point& p, const Point& q) const {
    if (locate(p, *poly_) == Location::exterior || locate(q, *poly_) == Location::exterior)
        throw std::domain_error("shortest path endpoint outside the polygon");
    if (p == q)
        return GeodesicPath{{p}};
    if (sees(*poly_, p, q))
        return GeodesicPath{{p, q}};

    auto starts = containing_triangles(p);
    auto goals = containing_triangles(q);
    if (starts.empty() || goals.empty())
        throw std::logic_error("point not covered by the triangulation");
    std::size_t best_s = starts[0], best_g = goals[0];
    int best = std::numeric_limits<int>::max();
    for (std::size_t s : starts) {
        auto dist = tree_distances(s);
        for (std::size_t g : goals) {
            if (dist[g] >= 0 && dist[g] < best) {
                best = dist[g];
                best_s = s;
                best_g = g;
            }
        }
    }

    // Sleeve: walk back from the goal along BFS parents.
    std::vector<int> parent(tri_.triangles.size(), -2);
    std::deque<std::size_t> queue{best_s};
    parent[best_s] = -1;
    while (!queue.empty()) {
        std::size_t t = queue.front();
        queue.pop_front();
        if (t == best_g)
            break;
        for (std::size_t u : tri_.dual[t]) {
            if (parent[u] == -2) {
                parent[u] = static_cast<int>(t);
                queue.push_back(u);
            }
        }
    }
    std::vector<std::size_t> sleeve;
    for (int t = static_cast<int>(best_g); t >= 0; t = parent[t])
        sleeve.push_back(static_cast<std::size_t>(t));
    std::reverse(sleeve.begin(), sleeve.end());

    std::vector<std::pair<Point, Point>> portals;  // (left, right)
    portals.emplace_back(p, p);
    for (std::size_t i = 0; i + 1 < sleeve.size(); ++i) {
        const Triangle& t = tri_.triangles[sleeve[i]];
        for (int k = 0; k < 3; ++k) {
            if (t.neighbor[k] == static_cast<int>(sleeve[i + 1])) {
                portals.emplace_back(poly_->vertex(t.v[(k + 1) % 3]), poly_->vertex(t.v[k]));
                break;
            }
        }
    }
    portals.emplace_back(q, q);

    std::vector<Point> path{p};
    Point apex = p, left = p, right = p;
    std::size_t apex_i = 0, left_i = 0, right_i = 0;
    for (std::size_t i = 1; i < portals.size(); ++i) {
        const Point& pl = portals[i].first;
        const Point& pr = portals[i].second;
        if (orient_sign(apex, right, pr) >= 0) {
            if (apex == right || orient_sign(apex, left, pr) < 0) {
                right = pr;
                right_i = i;
            } else {
                path.push_back(left);
                apex = left;
                apex_i = left_i;
                right = left = apex;
                right_i = left_i = apex_i;
                i = apex_i;
                continue;
            }
        }
        if (orient_sign(apex, left, pl) <= 0) {
            if (apex == left || orient_sign(apex, right, pl) > 0) {
                left = pl;
                left_i = i;
            } else {
                path.push_back(right);
                apex = right;
                apex_i = right_i;
                right = left = apex;
                right_i = left_i = apex_i;
                i = apex_i;
                continue;
            }
        }
    }
    if (path.back() != q)
        path.push_back(q);

    std::vector<Point> clean;
    for (const Point& w : path) {
        if (!clean.empty() && clean.back() == w)
            continue;
        while (clean.size() >= 2 && orient_sign(clean[clean.size() - 2], clean.back(), w) == 0)
            clean.pop_back();
        clean.push_back(w);
    }
    return GeodesicPath{std::move(clean)};
}

GeodesicPath shortest_path(const SimplePolygon& poly, const Point& p, const Point& q) {
    return PathFinder(poly).shortest_path(p, q);
}

Hourglass hourglass(const PathFinder& paths, const Point& a1, const Point& b1, const Point& a2, const Point& b2) {
    GeodesicPath x = paths.shortest_path(a1, a2);
    GeodesicPath y = paths.shortest_path(b1, b2);
    GeodesicPath xs = paths.shortest_path(a1, b2);
    GeodesicPath ys = paths.shortest_path(b1, a2);
    double straight = x.length() + y.length();
    double crossed = xs.length() + ys.length();
    bool use_crossed;
    if (std::fabs(straight - crossed) <= 1e-12 * (1.0 + straight))
        use_crossed = b2 < a2;
    else
        use_crossed = crossed < straight;
    Hourglass h;
    h.upper_chain = use_crossed ? std::move(xs) : std::move(x);
    h.lower_chain = use_crossed ? std::move(ys) : std::move(y);
    for (const Point& u : h.upper_chain.waypoints) {
        for (const Point& w : h.lower_chain.waypoints) {
            if (u == w)
                h.closed = true;
        }
    }
    return h;
}

Hourglass hourglass(const SimplePolygon& poly, const Segment& s1, const Segment& s2) {
    PathFinder paths(poly);
    return hourglass(paths, s1.a, s1.b, s2.a, s2.b);
}

namespace {

struct LineHit {
    Rational lo, hi;  // parameter range along the host segment (lo == hi unless collinear)
};

LineHit hit_segment(const Segment& s, const Point& u, const Point& w) {
    auto t = line_param(s.a, s.b, u, w);
    if (!t)
        return {Rational(0), Rational(1)};
    return {*t, *t};
}

/// Lines through two chain vertices that separate `upper` from `lower`
/// weakly, i.e. the supporting lines of every straight sightline.
void collect_feasible(const std::vector<Point>& upper, const std::vector<Point>& lower,
                      std::vector<std::pair<Point, Point>>& lines) {
    std::vector<Point> pts = upper;
    pts.insert(pts.end(), lower.begin(), lower.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Point& u = pts[i];
            const Point& w = pts[j];
            int up_pos = 0, up_neg = 0, lo_pos = 0, lo_neg = 0;
            for (const Point& p : upper) {
                int s = orient_sign(u, w, p);
                up_pos |= s > 0;
                up_neg |= s < 0;
            }
            if (up_pos && up_neg)
                continue;
            for (const Point& p : lower) {
                int s = orient_sign(u, w, p);
                lo_pos |= s > 0;
                lo_neg |= s < 0;
            }
            if (lo_pos && lo_neg)
                continue;
            bool ok = !(up_pos && lo_pos) && !(up_neg && lo_neg);
            if (ok)
                lines.emplace_back(u, w);
        }
    }
}

}  // namespace

VisibilityGlass visibility_glass(const PathFinder& paths, const Segment& s1, const Segment& s2) {
    VisibilityGlass g;
    std::vector<std::pair<Point, Point>> lines;
    std::vector<Point> chain_pts;
    const std::pair<const Point*, const Point*> labelings[] = {{&s2.a, &s2.b}, {&s2.b, &s2.a}};
    for (auto [to_a, to_b] : labelings) {
        GeodesicPath up = paths.shortest_path(s1.a, *to_a);
        GeodesicPath lo = paths.shortest_path(s1.b, *to_b);
        std::size_t before = lines.size();
        collect_feasible(up.waypoints, lo.waypoints, lines);
        if (lines.size() > before) {
            chain_pts.insert(chain_pts.end(), up.waypoints.begin(), up.waypoints.end());
            chain_pts.insert(chain_pts.end(), lo.waypoints.begin(), lo.waypoints.end());
        }
    }
    if (lines.empty())
        return g;
    std::sort(chain_pts.begin(), chain_pts.end());
    chain_pts.erase(std::unique(chain_pts.begin(), chain_pts.end()), chain_pts.end());

    std::size_t lo_line = 0, hi_line = 0;
    Rational lo_s2(0), hi_s2(0);
    bool lo_tangent = false, hi_tangent = false;
    auto cmp = [](const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); };
    bool first = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        LineHit h1 = hit_segment(s1, lines[i].first, lines[i].second);
        LineHit h2 = hit_segment(s2, lines[i].first, lines[i].second);
        // ties go to lines through a reflex chain vertex, then to the one
        // reaching farther along s2
        auto is_end = [&](const Point& p) { return p == s1.a || p == s1.b || p == s2.a || p == s2.b; };
        bool tangent = !is_end(lines[i].first) || !is_end(lines[i].second);
        auto better = [&](int cmp1, bool best_tangent, int cmp2) {
            if (cmp1 != 0)
                return cmp1 > 0;
            if (tangent != best_tangent)
                return tangent;
            return cmp2 > 0;
        };
        if (first || better(cmp(g.s1_lo, h1.lo), lo_tangent, cmp(lo_s2, h2.lo))) {
            g.s1_lo = h1.lo;
            lo_s2 = h2.lo;
            lo_tangent = tangent;
            lo_line = i;
        }
        if (first || better(cmp(h1.hi, g.s1_hi), hi_tangent, cmp(h2.hi, hi_s2))) {
            g.s1_hi = h1.hi;
            hi_s2 = h2.hi;
            hi_tangent = tangent;
            hi_line = i;
        }
        if (first || h2.lo < g.s2_lo)
            g.s2_lo = h2.lo;
        if (first || h2.hi > g.s2_hi)
            g.s2_hi = h2.hi;
        first = false;
    }
    g.empty = false;
    g.s1_visible.a = s1.at(g.s1_lo);
    g.s1_visible.b = s1.at(g.s1_hi);
    g.s2_visible.a = s2.at(g.s2_lo);
    g.s2_visible.b = s2.at(g.s2_hi);
    g.chain_vertices = std::move(chain_pts);

    auto clip_line = [&](std::size_t li, bool low_end) {
        const auto& [u, w] = lines[li];
        LineHit h1 = hit_segment(s1, u, w);
        LineHit h2 = hit_segment(s2, u, w);
        Point x = s1.at(low_end ? h1.lo : h1.hi);
        Point y = s2.at(h2.lo == h2.hi ? h2.lo : (low_end ? h2.lo : h2.hi));
        return std::make_pair(x, y);
    };
    auto [x0, y0] = clip_line(lo_line, true);
    auto [x1, y1] = clip_line(hi_line, false);
    if (x0 != y0)
        g.bitangents.emplace_back(x0, y0);
    if (x1 != y1 && !(x1 == x0 && y1 == y0))
        g.bitangents.emplace_back(x1, y1);
    return g;
}

VisibilityGlass visibility_glass(const SimplePolygon& poly, const Segment& s1, const Segment& s2) {
    PathFinder paths(poly);
    return visibility_glass(paths, s1, s2);
}

}  // namespace polyvis
