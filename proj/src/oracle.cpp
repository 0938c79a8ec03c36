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

#include "polyvis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace polyvis {

std::vector<double> uniform_samples(double length, std::size_t res) {
    if (res < 2)
        throw std::invalid_argument("sample resolution must be at least 2");
    std::vector<double> out(res);
    for (std::size_t i = 0; i < res; ++i)
        out[i] = length * static_cast<double>(i) / static_cast<double>(res - 1);
    out.back() = length;
    return out;
}

namespace {

std::vector<Point> sample_points(const Trajectory& t, const std::vector<double>& arcs) {
    std::vector<Point> pts;
    pts.reserve(arcs.size());
    for (double s : arcs)
        pts.push_back(t.point_at_arclen(s));
    return pts;
}

IntervalSet runs(const std::vector<double>& keys, const std::vector<char>& flags) {
    IntervalSet out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (!flags[i])
            continue;
        if (i > 0 && flags[i - 1])
            out.back().hi = keys[i];
        else
            out.push_back({keys[i], keys[i]});
    }
    return out;
}

}  // namespace

VisGrid oracle_vis_grid(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr, std::size_t res) {
    VisGrid g;
    g.q_samples = uniform_samples(tq.length(), res);
    g.r_samples = uniform_samples(tr.length(), res);
    auto qp = sample_points(tq, g.q_samples);
    auto rp = sample_points(tr, g.r_samples);
    g.visible.assign(res * res, 0);
    for (std::size_t i = 0; i < res; ++i) {
        for (std::size_t j = 0; j < res; ++j)
            g.visible[i * res + j] = sees(poly, qp[i], rp[j]) ? 1 : 0;
    }
    return g;
}

IntervalSet oracle_time_intervals(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr, double c0,
                                  double c1, double dt, bool hold_at_end) {
    if (!(dt > 0) || !(c0 > 0) || !(c1 > 0))
        throw std::invalid_argument("time step and speeds must be positive");
    const double tq_end = tq.length() / c0;
    const double tr_end = tr.length() / c1;
    const double horizon = hold_at_end ? std::max(tq_end, tr_end) : std::min(tq_end, tr_end);
    std::vector<double> times;
    const auto steps = static_cast<long long>(std::floor(horizon / dt));
    for (long long k = 0; k <= steps; ++k)
        times.push_back(static_cast<double>(k) * dt);
    if (horizon - times.back() > 1e-12)
        times.push_back(horizon);
    std::vector<char> flags(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        double sq = std::min(c0 * times[i], tq.length());
        double sr = std::min(c1 * times[i], tr.length());
        flags[i] = sees(poly, tq.point_at_arclen(sq), tr.point_at_arclen(sr)) ? 1 : 0;
    }
    return runs(times, flags);
}

std::vector<SweepRow> oracle_velocity_sweep(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr,
                                            Entity viewer, std::span<const double> velocities, double unit,
                                            std::size_t res) {
    const Trajectory& own = viewer == Entity::q ? tq : tr;
    const Trajectory& other = viewer == Entity::q ? tr : tq;
    auto arcs = uniform_samples(other.length(), res);
    auto pts = sample_points(other, arcs);
    std::vector<SweepRow> out;
    for (double v : velocities) {
        SweepRow row{v, {}};
        double s = v * unit;
        if (s <= own.length() + kLengthTolerance) {
            Point eye = own.point_at_arclen(std::min(s, own.length()));
            std::vector<char> flags(res);
            for (std::size_t j = 0; j < res; ++j)
                flags[j] = sees(poly, eye, pts[j]) ? 1 : 0;
            row.visible = runs(arcs, flags);
        }
        out.push_back(std::move(row));
    }
    return out;
}

GeodesicPath oracle_shortest_path(const SimplePolygon& poly, const Point& p, const Point& q) {
    if (locate(p, poly) == Location::exterior || locate(q, poly) == Location::exterior)
        throw std::domain_error("shortest path endpoint outside the polygon");
    std::vector<Point> nodes{p, q};
    for (const Point& v : poly.vertices())
        nodes.push_back(v);
    const std::size_t n = nodes.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(n, n);
    std::vector<char> done(n, 0);
    dist[0] = 0.0;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, 0});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u])
            continue;
        done[u] = 1;
        if (u == 1)
            break;
        for (std::size_t w = 0; w < n; ++w) {
            if (done[w] || nodes[w] == nodes[u] || !sees(poly, nodes[u], nodes[w]))
                continue;
            double nd = d + distance(nodes[u], nodes[w]);
            if (nd < dist[w]) {
                dist[w] = nd;
                parent[w] = u;
                heap.push({nd, w});
            }
        }
    }
    GeodesicPath path;
    if (p == q) {
        path.waypoints = {p};
        return path;
    }
    for (std::size_t u = 1; u != n; u = parent[u]) {
        path.waypoints.push_back(nodes[u]);
        if (u == 0)
            break;
    }
    std::reverse(path.waypoints.begin(), path.waypoints.end());
    return path;
}

namespace {

/// Angular order of direction vectors starting at +x, counterclockwise.
bool angle_less(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
    auto half = [](const Rational& x, const Rational& y) { return (y > 0 || (y == 0 && x > 0)) ? 0 : 1; };
    int ha = half(ax, ay), hb = half(bx, by);
    if (ha != hb)
        return ha < hb;
    return ax * by - ay * bx > 0;
}

}  // namespace

Rational oracle_visibility_area2(const SimplePolygon& poly, const Point& p) {
    if (locate(p, poly) == Location::exterior)
        throw std::domain_error("viewpoint outside the polygon");
    struct Dir {
        Rational x, y;
    };
    std::vector<Dir> dirs{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const Point& v : poly.vertices()) {
        if (v != p)
            dirs.push_back({v.x() - p.x(), v.y() - p.y()});
    }
    std::sort(dirs.begin(), dirs.end(),
              [](const Dir& a, const Dir& b) { return angle_less(a.x, a.y, b.x, b.y); });
    std::vector<Dir> uniq;
    for (const Dir& d : dirs) {
        if (!uniq.empty() && !angle_less(uniq.back().x, uniq.back().y, d.x, d.y))
            continue;
        uniq.push_back(d);
    }
    Rational area = 0;
    const std::size_t k = uniq.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Dir& d0 = uniq[i];
        const Dir& d1 = uniq[(i + 1) % k];
        // Unit-free bisector; valid because consecutive gaps are below 90 degrees.
        Rational len0 = abs(d0.x) + abs(d0.y), len1 = abs(d1.x) + abs(d1.y);
        Point mid_dir(p.x() + d0.x / len0 + d1.x / len1, p.y() + d0.y / len0 + d1.y / len1);
        std::optional<Rational> best;
        std::size_t best_edge = 0;
        for (std::size_t e = 0; e < poly.size(); ++e) {
            const Point& a = poly.vertex(e);
            const Point& b = poly.vertex(e + 1);
            auto s = line_param(p, mid_dir, a, b);
            if (!s || *s <= 0)
                continue;
            auto u = line_param(a, b, p, mid_dir);
            if (!u || *u < 0 || *u > 1)
                continue;
            if (!best || *s < *best) {
                best = s;
                best_edge = e;
            }
        }
        if (!best)
            continue;
        Point hit = lerp(p, mid_dir, *best);
        Point probe(Rational((p.x() + hit.x()) / 2), Rational((p.y() + hit.y()) / 2));
        if (locate(probe, poly) == Location::exterior)
            continue;
        const Point& a = poly.vertex(best_edge);
        const Point& b = poly.vertex(best_edge + 1);
        auto h0 = line_intersection(p, Point(p.x() + d0.x, p.y() + d0.y), a, b);
        auto h1 = line_intersection(p, Point(p.x() + d1.x, p.y() + d1.y), a, b);
        if (!h0 || !h1)
            continue;
        area += (h0->x() - p.x()) * (h1->y() - p.y()) - (h0->y() - p.y()) * (h1->x() - p.x());
    }
    area.canonicalize();
    return area;
}

std::vector<char> membership(std::span<const double> samples, const IntervalSet& set) {
    std::vector<char> out(samples.size(), 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (const Interval& iv : set) {
            if (samples[i] >= iv.lo - 1e-9 && samples[i] <= iv.hi + 1e-9) {
                out[i] = 1;
                break;
            }
        }
    }
    return out;
}

std::size_t far_mismatches(std::span<const double> samples, std::span<const char> truth, const IntervalSet& claimed,
                           double tolerance) {
    auto member = membership(samples, claimed);
    std::size_t count = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if ((member[i] != 0) == (truth[i] != 0))
            continue;
        double nearest = std::numeric_limits<double>::infinity();
        for (const Interval& iv : claimed)
            nearest = std::min({nearest, std::fabs(samples[i] - iv.lo), std::fabs(samples[i] - iv.hi)});
        if (nearest > tolerance)
            ++count;
    }
    return count;
}

namespace generators {

namespace {

bool untangle(std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    for (int round = 0; round < 2000; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < n && !changed; ++i) {
            for (std::size_t j = i + 2; j < n && !changed; ++j) {
                if (i == 0 && j == n - 1)
                    continue;
                Segment a(pts[i], pts[(i + 1) % n]);
                Segment b(pts[j], pts[(j + 1) % n]);
                if (segment_intersect(a, b).kind != SegmentIntersection::Kind::none) {
                    std::reverse(pts.begin() + static_cast<long>(i) + 1, pts.begin() + static_cast<long>(j) + 1);
                    changed = true;
                }
            }
        }
        if (!changed)
            return true;
    }
    return false;
}

}  // namespace

SimplePolygon random_polygon(std::uint64_t seed, std::size_t max_n, long coord_max) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 1);
    std::uniform_int_distribution<std::size_t> count(4, std::max<std::size_t>(4, max_n));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double c = static_cast<double>(coord_max) / 2.0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::size_t n = count(rng);
        std::vector<double> angles(n);
        for (double& a : angles)
            a = 2.0 * M_PI * unit(rng);
        std::sort(angles.begin(), angles.end());
        std::vector<Point> pts;
        for (double a : angles) {
            double r = c * (0.2 + 0.8 * unit(rng));
            long x = std::clamp(std::lround(c + r * std::cos(a)), 0L, coord_max);
            long y = std::clamp(std::lround(c + r * std::sin(a)), 0L, coord_max);
            Point p(x, y);
            if (std::find(pts.begin(), pts.end(), p) == pts.end())
                pts.push_back(p);
        }
        if (pts.size() < 4 || !untangle(pts))
            continue;
        try {
            return SimplePolygon(std::move(pts));
        } catch (const ValidationError&) {
            continue;
        }
    }
    throw std::runtime_error("polygon generator failed");
}

Point random_interior_point(const SimplePolygon& poly, std::mt19937_64& rng) {
    Rational lo_x = poly.vertex(0).x(), hi_x = lo_x, lo_y = poly.vertex(0).y(), hi_y = lo_y;
    for (const Point& v : poly.vertices()) {
        lo_x = std::min(lo_x, v.x());
        hi_x = std::max(hi_x, v.x());
        lo_y = std::min(lo_y, v.y());
        hi_y = std::max(hi_y, v.y());
    }
    long wx = static_cast<long>(Rational(4 * (hi_x - lo_x)).get_d());
    long wy = static_cast<long>(Rational(4 * (hi_y - lo_y)).get_d());
    std::uniform_int_distribution<long> dx(0, wx), dy(0, wy);
    for (int i = 0; i < 100000; ++i) {
        Point p(lo_x + Rational(dx(rng), 4), lo_y + Rational(dy(rng), 4));
        if (locate(p, poly) == Location::interior)
            return p;
    }
    throw std::runtime_error("no interior point found");
}

Point random_lattice_point(const SimplePolygon& poly, std::mt19937_64& rng) {
    long lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    bool first = true;
    for (const Point& v : poly.vertices()) {
        long x = static_cast<long>(std::floor(v.approx_x())), y = static_cast<long>(std::floor(v.approx_y()));
        lo_x = first ? x : std::min(lo_x, x);
        hi_x = first ? x + 1 : std::max(hi_x, x + 1);
        lo_y = first ? y : std::min(lo_y, y);
        hi_y = first ? y + 1 : std::max(hi_y, y + 1);
        first = false;
    }
    std::uniform_int_distribution<long> dx(lo_x, hi_x), dy(lo_y, hi_y);
    for (int i = 0; i < 100000; ++i) {
        Point p(dx(rng), dy(rng));
        if (locate(p, poly) != Location::exterior)
            return p;
    }
    throw std::runtime_error("no lattice point found");
}

std::pair<Segment, Segment> random_segment_pair(const SimplePolygon& poly, std::mt19937_64& rng) {
    auto one = [&]() {
        for (int i = 0; i < 100000; ++i) {
            Point a = random_interior_point(poly, rng);
            Point b = random_interior_point(poly, rng);
            if (a != b && sees(poly, a, b))
                return Segment(a, b);
        }
        throw std::runtime_error("no interior segment found");
    };
    Segment s1 = one();
    Segment s2 = one();
    return {s1, s2};
}

Trajectory random_trajectory(const SimplePolygon& poly, std::mt19937_64& rng, std::size_t max_vertices,
                             bool lattice) {
    std::uniform_int_distribution<std::size_t> count(2, std::max<std::size_t>(2, max_vertices));
    auto draw = [&]() { return lattice ? random_lattice_point(poly, rng) : random_interior_point(poly, rng); };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::size_t m = count(rng);
        std::vector<Point> pts{draw()};
        while (pts.size() < m) {
            bool extended = false;
            for (int k = 0; k < 200; ++k) {
                Point next = draw();
                if (next != pts.back() && sees(poly, pts.back(), next)) {
                    pts.push_back(next);
                    extended = true;
                    break;
                }
            }
            if (!extended)
                break;
        }
        if (pts.size() >= 2)
            return Trajectory(std::move(pts));
    }
    throw std::runtime_error("trajectory generator failed");
}

double random_velocity(std::mt19937_64& rng) {
    static constexpr double choices[] = {0.5, 1.0, 1.5, 2.0};
    std::uniform_int_distribution<int> pick(0, 3);
    return choices[pick(rng)];
}

}  // namespace generators

}  // namespace polyvis
