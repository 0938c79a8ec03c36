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

#include "polyvis/trajvis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyvis {

namespace {

/// Arc length along a segment of parameter t.
double arc_of(const Segment& s, const Rational& t) { return t.get_d() * s.length(); }

/// Clamped parameter of arc length `pos` on a segment.
Rational param_of(const Segment& s, double pos) {
    double len = s.length();
    double f = std::clamp(pos / len, 0.0, 1.0);
    Rational t = decimal_rational(f);
    if (t < 0)
        t = 0;
    if (t > 1)
        t = 1;
    return t;
}

struct Motion {
    const Trajectory* traj;
    double speed;

    double arclen(double time) const { return std::min(speed * time, traj->length()); }
    Point at(double time) const { return traj->point_at_arclen(arclen(time)); }
};

bool visible_at(const SimplePolygon& poly, const Motion& q, const Motion& r, double time) {
    return sees(poly, q.at(time), r.at(time));
}

/// Boundary between a visible instant and a hidden one, kept on the
/// visible side.
double refine_time(const SimplePolygon& poly, const Motion& q, const Motion& r, double visible, double hidden) {
    while (std::abs(visible - hidden) > 1e-9) {
        double mid = 0.5 * (visible + hidden);
        if (mid == visible || mid == hidden)
            break;
        if (visible_at(poly, q, r, mid))
            visible = mid;
        else
            hidden = mid;
    }
    return visible;
}

}  // namespace

long long lemma_scale(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr) {
    mpz_class den = 1;
    auto each = [&](auto&& fn) {
        for (const Point& p : poly.vertices())
            fn(p);
        for (const Trajectory* t : {&tq, &tr})
            for (const Point& p : t->vertices())
                fn(p);
    };
    each([&](const Point& p) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.x().get_den_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.y().get_den_mpz_t());
    });
    mpz_class largest = 1;
    each([&](const Point& p) {
        for (const Rational* c : {&p.x(), &p.y()}) {
            Rational scaled = abs(*c) * den;
            mpz_class whole = scaled.get_num() / scaled.get_den();
            if (whole > largest)
                largest = whole;
        }
    });
    mpz_class L = 20 * largest * den;
    if (!L.fits_slong_p())
        throw std::invalid_argument("coordinates too large for the integrality scale");
    return L.get_si();
}

LemmaResult solve_given_velocities(const SimplePolygon& poly, const Trajectory& tq, const Trajectory& tr, double c0,
                                   double c1, const LemmaOptions& options) {
    if (!(c0 > 0.0) || !(c1 > 0.0) || !std::isfinite(c0) || !std::isfinite(c1))
        throw std::invalid_argument("speeds must be positive");
    LemmaResult res;
    res.L = lemma_scale(poly, tq, tr);
    const double L = static_cast<double>(res.L);
    res.d = 1.0 / L;
    const double eps = options.eps.value_or(res.d);
    res.t_q = 1.0 / (L * c0);
    res.t_r = 1.0 / (L * c1);
    const double q_end = tq.length() / c0;
    const double r_end = tr.length() / c1;
    res.horizon = options.hold_at_end ? std::max(q_end, r_end) : std::min(q_end, r_end);

    PathFinder paths(poly);
    if (totally_invisible(paths, tq, tr)) {
        res.glass_empty = true;
        return res;
    }

    // Merged timestamps: every instant at which q or r enters a new piece.
    std::vector<double> times;
    auto add_steps = [&](double speed) {
        const double per = L * speed;
        const auto count = static_cast<long long>(std::floor(res.horizon * per + 1e-9));
        for (long long k = 0; k <= count; ++k)
            times.push_back(static_cast<double>(k) / per);
    };
    add_steps(c0);
    add_steps(c1);
    times.push_back(res.horizon);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, b); }),
                times.end());
    while (!times.empty() && times.back() > res.horizon)
        times.pop_back();
    if (times.empty() || times.back() < res.horizon)
        times.push_back(res.horizon);

    res.trees.reserve(tr.edge_count());
    for (std::size_t e = 0; e < tr.edge_count(); ++e)
        res.trees.emplace_back(tr.edge(e), res.d);

    const Motion mq{&tq, c0};
    const Motion mr{&tr, c1};
    std::vector<char> flags(times.size(), 0);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto stamp = static_cast<std::int64_t>(k);
        const Point viewer = mq.at(times[k]);
        const TrajPosition pos = tr.position_at(mr.arclen(times[k]));
        VisRangeTree& tree = res.trees[pos.edge];
        const std::size_t partial_before = tree.partial_leaves().size();
        res.marked_nodes += tree.mark(poly, viewer, stamp, eps);
        bool vis = !tree.query(pos.fraction, pos.fraction, stamp).empty();
        if (!vis) {
            const auto& partial = tree.partial_leaves();
            for (std::size_t i = partial_before; i < partial.size() && !vis; ++i)
                vis = partial[i].lo <= pos.fraction && pos.fraction <= partial[i].hi;
        }
        flags[k] = vis ? 1 : 0;
    }
    res.steps = times.size();
    for (const auto& t : res.trees)
        res.max_marks_per_level = std::max(res.max_marks_per_level, t.max_marks_per_level());

    // Steps within eps of a boundary may be misflagged by the trees; steps
    // adjacent to a transition are rechecked exactly, since the refinement
    // below relies on them.
    std::vector<char> checked(times.size(), 0);
    std::vector<std::size_t> work;
    auto enqueue_transitions = [&](std::size_t k) {
        for (std::size_t i : {k, k + 1})
            if (i > 0 && i < times.size() && flags[i] != flags[i - 1]) {
                work.push_back(i - 1);
                work.push_back(i);
            }
    };
    for (std::size_t k = 1; k < times.size(); ++k)
        if (flags[k] != flags[k - 1]) {
            work.push_back(k - 1);
            work.push_back(k);
        }
    while (!work.empty()) {
        std::size_t k = work.back();
        work.pop_back();
        if (checked[k])
            continue;
        checked[k] = 1;
        char exact = visible_at(poly, mq, mr, times[k]) ? 1 : 0;
        if (exact != flags[k]) {
            flags[k] = exact;
            if (k > 0)
                enqueue_transitions(k - 1);
            enqueue_transitions(k);
        }
    }

    for (std::size_t k = 0; k < times.size();) {
        if (!flags[k]) {
            ++k;
            continue;
        }
        std::size_t j = k;
        while (j + 1 < times.size() && flags[j + 1])
            ++j;
        double lo = k == 0 ? times[0] : refine_time(poly, mq, mr, times[k], times[k - 1]);
        double hi = j + 1 == times.size() ? times[j] : refine_time(poly, mq, mr, times[j], times[j + 1]);
        if (hi > lo)
            res.intervals.push_back({lo, hi});
        k = j + 1;
    }
    res.intervals = normalize(std::move(res.intervals));
    return res;
}

SideMap::SideMap(const SimplePolygon& poly, Segment source, Segment target,
                 const std::vector<std::pair<Point, Point>>& breaks, const Rational& from, const Rational& to)
    : source_(std::move(source)), target_(std::move(target)) {
    if (to < from)
        return;
    std::vector<Rational> cuts{from, to};
    for (const auto& [u, w] : breaks) {
        if (u == w)
            continue;
        auto t = line_param(source_.a, source_.b, u, w);
        if (t && *t > from && *t < to) {
            t->canonicalize();
            cuts.push_back(*t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.size() == 1) {
        auto vi = visible_interval(poly, source_.at(from), target_);
        if (!vi.empty)
            pieces_.push_back({from, from, {vi.lo_pivot, vi.lo}, {vi.hi_pivot, vi.hi}});
        return;
    }
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        add_piece(poly, cuts[i], cuts[i + 1], 0);
}

std::optional<Rational> SideMap::apply(const EndRule& rule, const Point& viewer) const {
    if (rule.pivot.kind == Pivot::Kind::fixed)
        return rule.fixed;
    if (viewer == rule.pivot.point)
        return std::nullopt;
    auto t = line_param(target_.a, target_.b, viewer, rule.pivot.point);
    if (!t)
        return std::nullopt;
    Rational v = std::clamp(*t, Rational(0), Rational(1));
    v.canonicalize();
    return v;
}

void SideMap::add_piece(const SimplePolygon& poly, const Rational& a, const Rational& b, int depth) {
    constexpr int kMaxDepth = 24;
    Rational mid = (a + b) / 2;
    mid.canonicalize();
    auto split = [&] {
        add_piece(poly, a, mid, depth + 1);
        add_piece(poly, mid, b, depth + 1);
    };
    auto vi = visible_interval(poly, source_.at(mid), target_);
    if (vi.empty) {
        if (depth < 8)
            split();
        return;
    }
    SidePiece piece{a, b, {vi.lo_pivot, vi.lo}, {vi.hi_pivot, vi.hi}};
    if (depth < kMaxDepth) {
        for (const Rational* t : {&a, &b}) {
            Point x = source_.at(*t);
            auto truth = visible_interval(poly, x, target_);
            auto lo = apply(piece.lo_end, x);
            auto hi = apply(piece.hi_end, x);
            if (truth.empty || !lo || !hi || *lo != truth.lo || *hi != truth.hi) {
                split();
                return;
            }
        }
    }
    if (!pieces_.empty() && pieces_.back().hi == a && pieces_.back().lo_end.pivot == piece.lo_end.pivot &&
        pieces_.back().hi_end.pivot == piece.hi_end.pivot && pieces_.back().lo_end.fixed == piece.lo_end.fixed &&
        pieces_.back().hi_end.fixed == piece.hi_end.fixed) {
        pieces_.back().hi = b;
        return;
    }
    pieces_.push_back(std::move(piece));
}

std::optional<std::pair<Rational, Rational>> SideMap::evaluate(const Rational& t) const {
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                               [](const SidePiece& p, const Rational& v) { return p.hi < v; });
    Rational at = t;
    if (it == pieces_.end() || it->lo > t) {
        // arc lengths arrive as doubles; snap values a rounding step away
        constexpr double kSnap = 1e-12;
        if (it != pieces_.end() && Rational(it->lo - t).get_d() <= kSnap) {
            at = it->lo;
        } else if (it != pieces_.begin() && Rational(t - std::prev(it)->hi).get_d() <= kSnap) {
            --it;
            at = it->hi;
        } else {
            return std::nullopt;
        }
    }
    Point x = source_.at(at);
    auto lo = apply(it->lo_end, x);
    auto hi = apply(it->hi_end, x);
    if (!lo || !hi || *lo > *hi)
        return std::nullopt;
    return std::make_pair(*lo, *hi);
}

std::vector<std::pair<Rational, Rational>> SideMap::covering(const Rational& a, const Rational& b) const {
    std::vector<std::pair<Rational, Rational>> out;
    // Source range where the rule's value compares to `bound` as wanted;
    // the value is monotone on a piece, so the range is a prefix or suffix.
    auto range = [&](const SidePiece& p, const EndRule& rule, const Rational& bound,
                     bool want_le) -> std::optional<std::pair<Rational, Rational>> {
        auto at_lo = apply(rule, source_.at(p.lo));
        auto at_hi = apply(rule, source_.at(p.hi));
        if (!at_lo || !at_hi)
            return std::nullopt;
        auto ok = [&](const Rational& v) { return want_le ? v <= bound : v >= bound; };
        bool ok_lo = ok(*at_lo), ok_hi = ok(*at_hi);
        if (ok_lo && ok_hi)
            return std::make_pair(p.lo, p.hi);
        if (!ok_lo && !ok_hi)
            return std::nullopt;
        auto cut = line_param(source_.a, source_.b, rule.pivot.point, target_.at(bound));
        if (!cut)
            return std::nullopt;
        Rational c = std::clamp(*cut, p.lo, p.hi);
        c.canonicalize();
        return ok_lo ? std::make_pair(p.lo, c) : std::make_pair(c, p.hi);
    };
    for (const SidePiece& p : pieces_) {
        auto r1 = range(p, p.lo_end, a, true);
        auto r2 = range(p, p.hi_end, b, false);
        if (!r1 || !r2)
            continue;
        Rational lo = std::max(r1->first, r2->first);
        Rational hi = std::min(r1->second, r2->second);
        if (lo > hi)
            continue;
        if (!out.empty() && out.back().second == lo)
            out.back().second = hi;
        else
            out.emplace_back(lo, hi);
    }
    return out;
}

std::optional<Interval> SegmentVisStructure::visible_from(Entity viewer, double pos) const {
    const SideMap& side = viewer == Entity::q ? q_side : r_side;
    if (side.empty())
        return std::nullopt;
    auto ev = side.evaluate(param_of(side.source(), pos));
    if (!ev)
        return std::nullopt;
    return Interval{arc_of(side.target(), ev->first), arc_of(side.target(), ev->second)};
}

std::vector<std::size_t> SegmentVisStructure::wedges_at(Entity viewer, double pos) const {
    return viewer == Entity::q ? tree_q.stab(pos) : tree_r.stab(pos);
}

SegmentVisStructure build_segment_structure(const PathFinder& paths, const Segment& s1, const Segment& s2,
                                            double unit) {
    if (!(unit > 0.0))
        throw std::invalid_argument("time unit must be positive");
    SegmentVisStructure s;
    s.s1 = s1;
    s.s2 = s2;
    s.unit = unit;
    s.glass = visibility_glass(paths, s1, s2);
    if (s.glass.empty)
        return s;

    std::vector<std::pair<Point, Point>> breaks;
    std::vector<Point> chain;
    const std::pair<const Point*, const Point*> labelings[] = {{&s2.a, &s2.b}, {&s2.b, &s2.a}};
    for (auto [to_a, to_b] : labelings) {
        for (const GeodesicPath& path : {paths.shortest_path(s1.a, *to_a), paths.shortest_path(s1.b, *to_b)}) {
            for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
                breaks.emplace_back(path.waypoints[i], path.waypoints[i + 1]);
            chain.insert(chain.end(), path.waypoints.begin(), path.waypoints.end());
        }
    }
    std::sort(chain.begin(), chain.end());
    chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
    for (const Point& w : chain)
        for (const Point* e : {&s1.a, &s1.b, &s2.a, &s2.b})
            if (w != *e)
                breaks.emplace_back(w, *e);

    const SimplePolygon& poly = paths.polygon();
    s.q_side = SideMap(poly, s1, s2, breaks, s.glass.s1_lo, s.glass.s1_hi);
    s.r_side = SideMap(poly, s2, s1, breaks, s.glass.s2_lo, s.glass.s2_hi);

    std::vector<EndpointTree<std::size_t>::Entry> eq, er, vq, vr;
    for (const SidePiece& p : s.q_side.pieces()) {
        Point a = s1.at(p.lo), b = s1.at(p.hi);
        auto la = s.q_side.evaluate(p.lo);
        auto lb = s.q_side.evaluate(p.hi);
        if (!la || !lb)
            continue;
        Wedge w;
        w.q_lo = p.lo;
        w.q_hi = p.hi;
        w.r_lo = std::max(la->first, lb->first);
        w.r_hi = std::min(la->second, lb->second);
        if (w.r_lo > w.r_hi)
            continue;
        w.q_range = {arc_of(s1, w.q_lo), arc_of(s1, w.q_hi)};
        w.r_range = {arc_of(s2, w.r_lo), arc_of(s2, w.r_hi)};
        w.lo_pivot = p.lo_end.pivot;
        w.hi_pivot = p.hi_end.pivot;
        std::size_t idx = s.wedges.size();
        eq.push_back({w.q_range.lo, w.q_range.hi, idx});
        er.push_back({w.r_range.lo, w.r_range.hi, idx});
        vq.push_back({w.q_range.lo / unit, w.q_range.hi / unit, idx});
        vr.push_back({w.r_range.lo / unit, w.r_range.hi / unit, idx});
        s.wedges.push_back(std::move(w));
    }
    s.tree_q = EndpointTree<std::size_t>(std::move(eq));
    s.tree_r = EndpointTree<std::size_t>(std::move(er));
    s.tree_q_velocity = EndpointTree<std::size_t>(std::move(vq));
    s.tree_r_velocity = EndpointTree<std::size_t>(std::move(vr));
    return s;
}

SegmentVisStructure build_segment_structure(const SimplePolygon& poly, const Segment& s1, const Segment& s2,
                                            double unit) {
    PathFinder paths(poly);
    return build_segment_structure(paths, s1, s2, unit);
}

PositionAnswer query_positions(const SegmentVisStructure& s, double c0, double c1) {
    if (!(c0 > 0.0) || !(c1 > 0.0))
        throw std::invalid_argument("speeds must be positive");
    PositionAnswer out;
    out.q_pos = c0 * s.unit;
    out.r_pos = c1 * s.unit;
    if (out.q_pos > s.s1.length() + kLengthTolerance || out.r_pos > s.s2.length() + kLengthTolerance)
        throw std::domain_error("position outside the trajectory");
    out.q_pos = std::min(out.q_pos, s.s1.length());
    out.r_pos = std::min(out.r_pos, s.s2.length());
    if (s.empty())
        return out;
    if (auto v = s.visible_from(Entity::q, out.q_pos))
        out.r_visible.push_back(*v);
    if (auto v = s.visible_from(Entity::r, out.r_pos))
        out.q_visible.push_back(*v);
    for (const Interval& iv : out.r_visible)
        if (iv.lo - kLengthTolerance <= out.r_pos && out.r_pos <= iv.hi + kLengthTolerance)
            out.mutually_visible = true;
    return out;
}

RangeAnswer query_velocities(const SegmentVisStructure& s, const Interval& q_target, const Interval& r_target) {
    RangeAnswer out;
    if (s.empty())
        return out;
    auto run = [&](const SideMap& side, const Interval& target, std::vector<VelocityRange>& dst) {
        if (target.lo > target.hi || target.lo < -kLengthTolerance ||
            target.hi > side.target().length() + kLengthTolerance)
            throw std::domain_error("target range outside the trajectory");
        for (const auto& [lo, hi] : side.covering(param_of(side.target(), target.lo),
                                                  param_of(side.target(), target.hi)))
            dst.push_back({arc_of(side.source(), lo) / s.unit, arc_of(side.source(), hi) / s.unit});
    };
    run(s.q_side, r_target, out.q_velocities);
    run(s.r_side, q_target, out.r_velocities);
    return out;
}

}  // namespace polyvis
