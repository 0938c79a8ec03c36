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

#include "polyvis/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace polyvis {

Point::Point(Rational x, Rational y)
    : x_(std::move(x))
    , y_(std::move(y))
{
    x_.canonicalize();
    y_.canonicalize();
    ax_ = x_.get_d();
    ay_ = y_.get_d();
}

Point::Point(long x, long y)
    : Point(Rational(x), Rational(y))
{}

bool operator<(const Point& a, const Point& b) {
    int c = compare_x(a, b);
    if (c != 0)
        return c < 0;
    return compare_y(a, b) < 0;
}

std::ostream& operator<<(std::ostream& o, const Point& p) {
    return o << "(" << to_string(p.x()) << ", " << to_string(p.y()) << ")";
}

Rational to_rational(double v) {
    if (!std::isfinite(v))
        throw std::invalid_argument("non-finite number");
    return Rational(v);
}

namespace {

Rational parse_decimal(const std::string& s) {
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    long exponent = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point)
                --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit)
        throw std::invalid_argument("not a number: '" + s + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(s.substr(i), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in '" + s + "'");
        }
        i += used;
        exponent += e;
    }
    if (i != s.size())
        throw std::invalid_argument("trailing characters in '" + s + "'");
    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational r = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Rational decimal_rational(double v) {
    if (!std::isfinite(v))
        throw std::invalid_argument("non-finite number");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return parse_decimal(std::string(buf, res.ptr));
}

Rational parse_rational(const std::string& text) {
    std::string s = trim(text);
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return parse_decimal(s);
    Rational num = parse_decimal(trim(s.substr(0, slash)));
    Rational den = parse_decimal(trim(s.substr(slash + 1)));
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r = num / den;
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c < 0 || !mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t()))
        return std::nullopt;
    mpz_class n = sqrt(c.get_num());
    mpz_class d = sqrt(c.get_den());
    return Rational(n, d);
}

int orient_sign(const Point& p, const Point& q, const Point& r) {
    const double ax = p.approx_x(), ay = p.approx_y();
    const double bx = q.approx_x(), by = q.approx_y();
    const double cx = r.approx_x(), cy = r.approx_y();
    const double det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    const double mag = (std::fabs(bx) + std::fabs(ax)) * (std::fabs(cy) + std::fabs(ay))
                       + (std::fabs(by) + std::fabs(ay)) * (std::fabs(cx) + std::fabs(ax));
    const double bound = 4e-15 * mag;
    if (det > bound)
        return 1;
    if (det < -bound)
        return -1;
    Rational exact = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
    return sgn(exact);
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
    return static_cast<Orientation>(orient_sign(p, q, r));
}

namespace {

int filtered_compare(double fa, double fb, const Rational& a, const Rational& b) {
    const double tol = 4e-16 * (std::fabs(fa) + std::fabs(fb));
    if (fa > fb + tol)
        return 1;
    if (fa < fb - tol)
        return -1;
    return cmp(a, b) > 0 ? 1 : (cmp(a, b) < 0 ? -1 : 0);
}

}  // namespace

int compare_x(const Point& a, const Point& b) {
    return filtered_compare(a.approx_x(), b.approx_x(), a.x(), b.x());
}

int compare_y(const Point& a, const Point& b) {
    return filtered_compare(a.approx_y(), b.approx_y(), a.y(), b.y());
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient_sign(a, b, p) != 0)
        return false;
    int cx1 = compare_x(p, a), cx2 = compare_x(p, b);
    int cy1 = compare_y(p, a), cy2 = compare_y(p, b);
    return cx1 * cx2 <= 0 && cy1 * cy2 <= 0;
}

Point lerp(const Point& a, const Point& b, const Rational& t) {
    if (t == 0)
        return a;
    if (t == 1)
        return b;
    return Point(a.x() + t * (b.x() - a.x()), a.y() + t * (b.y() - a.y()));
}

Rational param_on(const Point& a, const Point& b, const Point& p) {
    Rational dx = b.x() - a.x();
    Rational dy = b.y() - a.y();
    Rational t = ((p.x() - a.x()) * dx + (p.y() - a.y()) * dy) / (dx * dx + dy * dy);
    t.canonicalize();
    return t;
}

std::optional<Rational> line_param(const Point& a, const Point& b, const Point& c, const Point& d) {
    Rational rx = b.x() - a.x(), ry = b.y() - a.y();
    Rational sx = d.x() - c.x(), sy = d.y() - c.y();
    Rational denom = rx * sy - ry * sx;
    if (denom == 0)
        return std::nullopt;
    Rational t = ((c.x() - a.x()) * sy - (c.y() - a.y()) * sx) / denom;
    t.canonicalize();
    return t;
}

std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
    auto t = line_param(a, b, c, d);
    if (!t)
        return std::nullopt;
    return lerp(a, b, *t);
}

double distance(const Point& a, const Point& b) {
    return std::hypot(a.approx_x() - b.approx_x(), a.approx_y() - b.approx_y());
}

Segment::Segment(Point a_, Point b_)
    : a(std::move(a_))
    , b(std::move(b_))
{
    if (a == b)
        throw std::invalid_argument("degenerate segment");
}

SegmentIntersection segment_intersect(const Segment& s, const Segment& t) {
    SegmentIntersection out;
    int o1 = orient_sign(s.a, s.b, t.a);
    int o2 = orient_sign(s.a, s.b, t.b);
    int o3 = orient_sign(t.a, t.b, s.a);
    int o4 = orient_sign(t.a, t.b, s.b);
    if (o1 == 0 && o2 == 0) {
        // Collinear: overlap of the parameter ranges along s.
        Rational u0 = param_on(s.a, s.b, t.a);
        Rational u1 = param_on(s.a, s.b, t.b);
        if (u0 > u1)
            std::swap(u0, u1);
        Rational lo = u0 > 0 ? u0 : Rational(0);
        Rational hi = u1 < 1 ? u1 : Rational(1);
        if (lo > hi)
            return out;
        if (lo == hi) {
            out.kind = SegmentIntersection::Kind::point;
            out.p = s.at(lo);
            return out;
        }
        out.kind = SegmentIntersection::Kind::overlap;
        out.p = s.at(lo);
        out.q = s.at(hi);
        return out;
    }
    if (o1 * o2 > 0 || o3 * o4 > 0)
        return out;
    out.kind = SegmentIntersection::Kind::point;
    if (o1 == 0)
        out.p = t.a;
    else if (o2 == 0)
        out.p = t.b;
    else if (o3 == 0)
        out.p = s.a;
    else if (o4 == 0)
        out.p = s.b;
    else
        out.p = *line_intersection(s.a, s.b, t.a, t.b);
    return out;
}

Rational signed_area2(std::span<const Point> ring) {
    Rational acc = 0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        acc += a.x() * b.y() - b.x() * a.y();
    }
    return acc;
}

namespace {

bool boxes_disjoint(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double slack = 1e-12 * (1.0 + std::fabs(a.approx_x()) + std::fabs(a.approx_y()) + std::fabs(c.approx_x())
                                  + std::fabs(c.approx_y()));
    if (std::max(a.approx_x(), b.approx_x()) < std::min(c.approx_x(), d.approx_x()) - slack)
        return true;
    if (std::max(c.approx_x(), d.approx_x()) < std::min(a.approx_x(), b.approx_x()) - slack)
        return true;
    if (std::max(a.approx_y(), b.approx_y()) < std::min(c.approx_y(), d.approx_y()) - slack)
        return true;
    if (std::max(c.approx_y(), d.approx_y()) < std::min(a.approx_y(), b.approx_y()) - slack)
        return true;
    return false;
}

}  // namespace

SimplePolygon::SimplePolygon(std::vector<Point> vertices)
    : vertices_(std::move(vertices))
{
    const std::size_t n = vertices_.size();
    if (n < 3)
        throw ValidationError("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        if (vertices_[i] == vertices_[(i + 1) % n])
            throw ValidationError("polygon has repeated consecutive vertex " + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point& c = vertices_[j];
            const Point& d = vertices_[(j + 1) % n];
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (boxes_disjoint(a, b, c, d))
                continue;
            auto hit = segment_intersect(Segment(a, b), Segment(c, d));
            if (hit.kind == SegmentIntersection::Kind::none)
                continue;
            if (adjacent && hit.kind == SegmentIntersection::Kind::point && n > 3)
                continue;  // shared endpoint only
            if (adjacent && n == 3 && hit.kind == SegmentIntersection::Kind::point)
                continue;
            throw ValidationError("polygon edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
        }
    }
    Rational area = signed_area2(vertices_);
    if (area == 0)
        throw ValidationError("polygon has zero area");
    if (area < 0) {
        std::reverse(vertices_.begin(), vertices_.end());
        reversed_ = true;
    }
}

bool SimplePolygon::is_reflex(std::size_t i) const {
    const std::size_t n = size();
    return orient_sign(vertex(i + n - 1), vertex(i), vertex(i + 1)) < 0;
}

Rational SimplePolygon::area2() const {
    return signed_area2(vertices_);
}

Location locate(const Point& p, const SimplePolygon& poly) {
    return locate(p, std::span<const Point>(poly.vertices()));
}

Location locate(const Point& p, std::span<const Point> ring) {
    bool inside = false;
    const std::size_t n = ring.size();
    const double px = p.approx_x(), py = p.approx_y();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        const double slack = 1e-12 * (1.0 + std::fabs(px) + std::fabs(py));
        bool near = !(std::max(a.approx_x(), b.approx_x()) < px - slack || std::min(a.approx_x(), b.approx_x()) > px + slack
                      || std::max(a.approx_y(), b.approx_y()) < py - slack
                      || std::min(a.approx_y(), b.approx_y()) > py + slack);
        if (near && on_segment(p, a, b))
            return Location::boundary;
        bool a_above = compare_y(a, p) > 0;
        bool b_above = compare_y(b, p) > 0;
        if (a_above != b_above) {
            if (std::min(a.approx_x(), b.approx_x()) > px + slack) {
                inside = !inside;  // edge entirely to the right
                continue;
            }
            if (std::max(a.approx_x(), b.approx_x()) < px - slack)
                continue;
            int o = orient_sign(a, b, p);
            if (b_above ? o > 0 : o < 0)
                inside = !inside;
        }
    }
    return inside ? Location::interior : Location::exterior;
}

bool sees(const SimplePolygon& poly, const Point& a, const Point& b) {
    if (a == b)
        return locate(a, poly) != Location::exterior;
    std::vector<Rational> ts;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& u = poly.vertex(i);
        const Point& v = poly.vertex(i + 1);
        if (boxes_disjoint(a, b, u, v))
            continue;
        int o1 = orient_sign(a, b, u);
        int o2 = orient_sign(a, b, v);
        if (o1 * o2 > 0)
            continue;
        int o3 = orient_sign(u, v, a);
        int o4 = orient_sign(u, v, b);
        if (o3 * o4 > 0)
            continue;
        if (o1 == 0 && o2 == 0) {
            for (const Point* w : {&u, &v}) {
                Rational t = param_on(a, b, *w);
                if (t > 0 && t < 1)
                    ts.push_back(t);
            }
            continue;
        }
        if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
            return false;  // transversal crossing of an edge interior
        if (o1 == 0) {
            Rational t = param_on(a, b, u);
            if (t > 0 && t < 1)
                ts.push_back(t);
        }
        if (o2 == 0) {
            Rational t = param_on(a, b, v);
            if (t > 0 && t < 1)
                ts.push_back(t);
        }
    }
    ts.emplace_back(0);
    ts.emplace_back(1);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        Rational mid = (ts[i] + ts[i + 1]) / 2;
        if (locate(lerp(a, b, mid), poly) == Location::exterior)
            return false;
    }
    return true;
}

bool convex_region_inside(const SimplePolygon& poly, std::span<const Point> ring) {
    std::vector<Point> pts;
    for (const Point& p : ring) {
        if (pts.empty() || pts.back() != p)
            pts.push_back(p);
    }
    while (pts.size() > 1 && pts.front() == pts.back())
        pts.pop_back();
    if (pts.size() == 1)
        return locate(pts[0], poly) != Location::exterior;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!sees(poly, pts[i], pts[(i + 1) % pts.size()]))
            return false;
    }
    if (pts.size() < 3 || signed_area2(pts) == 0)
        return true;
    // Boundary inside; the open interior must not meet any polygon edge.
    const std::size_t k = pts.size();
    for (std::size_t e = 0; e < poly.size(); ++e) {
        const Point& u = poly.vertex(e);
        const Point& v = poly.vertex(e + 1);
        Rational t0 = 0, t1 = 1;
        bool empty = false;
        for (std::size_t i = 0; i < k && !empty; ++i) {
            const Point& p = pts[i];
            const Point& q = pts[(i + 1) % k];
            // keep orient(p, q, x) >= 0 for x = u + t (v - u); linear in t
            Rational fu = (q.x() - p.x()) * (u.y() - p.y()) - (q.y() - p.y()) * (u.x() - p.x());
            Rational fv = (q.x() - p.x()) * (v.y() - p.y()) - (q.y() - p.y()) * (v.x() - p.x());
            if (fu >= 0 && fv >= 0)
                continue;
            if (fu < 0 && fv < 0) {
                empty = true;
                break;
            }
            Rational root = fu / (fu - fv);
            if (fu < 0)
                t0 = std::max(t0, root);
            else
                t1 = std::min(t1, root);
            if (t0 >= t1)
                empty = true;
        }
        if (empty)
            continue;
        Point mid = lerp(u, v, (t0 + t1) / 2);
        bool strictly_inside = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (orient_sign(pts[i], pts[(i + 1) % k], mid) <= 0) {
                strictly_inside = false;
                break;
            }
        }
        if (strictly_inside)
            return false;
    }
    return true;
}

Trajectory::Trajectory(std::vector<Point> vertices)
    : vertices_(std::move(vertices))
{
    if (vertices_.size() < 2)
        throw ValidationError("trajectory needs at least 2 vertices");
    cumulative_.push_back(0.0);
    exact_cumulative_.emplace_back(Rational(0));
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        if (vertices_[i] == vertices_[i + 1])
            throw ValidationError("trajectory edge " + std::to_string(i) + " has zero length");
        const Point& a = vertices_[i];
        const Point& b = vertices_[i + 1];
        Rational dx = b.x() - a.x(), dy = b.y() - a.y();
        auto len = rational_sqrt(dx * dx + dy * dy);
        if (len && exact_cumulative_.back()) {
            exact_cumulative_.emplace_back(*exact_cumulative_.back() + *len);
            cumulative_.push_back(exact_cumulative_.back()->get_d());
        } else {
            exact_cumulative_.emplace_back(std::nullopt);
            cumulative_.push_back(cumulative_.back() + distance(a, b));
        }
    }
}

TrajPosition Trajectory::position_at(double arclen) const {
    if (!(arclen >= -kLengthTolerance && arclen <= length() + kLengthTolerance))
        throw std::domain_error("arc length outside trajectory");
    if (arclen <= 0)
        return {0, Rational(0)};
    if (arclen >= length())
        return {edge_count() - 1, Rational(1)};
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), arclen);
    std::size_t e = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    e = std::min(e, edge_count() - 1);
    if (exact_cumulative_[e + 1]) {
        // Rational edge lengths: read the arc length as its shortest decimal.
        const Rational& lo = *exact_cumulative_[e];
        const Rational& hi = *exact_cumulative_[e + 1];
        Rational s = decimal_rational(arclen);
        if (s >= lo && s <= hi) {
            Rational t = (s - lo) / (hi - lo);
            t.canonicalize();
            if (t == 1 && e + 1 < edge_count())
                return {e + 1, Rational(0)};
            return {e, t};
        }
    }
    double frac = (arclen - cumulative_[e]) / edge_length(e);
    frac = std::clamp(frac, 0.0, 1.0);
    if (frac >= 1.0 && e + 1 < edge_count())
        return {e + 1, Rational(0)};
    return {e, to_rational(frac)};
}

Point Trajectory::point_at(const TrajPosition& pos) const {
    return lerp(vertices_[pos.edge], vertices_[pos.edge + 1], pos.fraction);
}

double Trajectory::arclen_of(const TrajPosition& pos) const {
    return arclen_on_edge(pos.edge, pos.fraction);
}

double Trajectory::arclen_on_edge(std::size_t edge, const Rational& t) const {
    return cumulative_[edge] + t.get_d() * edge_length(edge);
}

IntervalSet normalize(IntervalSet set, double slack) {
    std::sort(set.begin(), set.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    IntervalSet out;
    for (const Interval& iv : set) {
        if (!out.empty() && iv.lo <= out.back().hi + slack)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

void validate_trajectory(const SimplePolygon& poly, const Trajectory& traj, const std::string& name) {
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (locate(traj.vertex(i), poly) == Location::exterior) {
            std::ostringstream msg;
            msg << name << " vertex " << i << " " << traj.vertex(i) << " lies outside the polygon";
            throw ValidationError(msg.str());
        }
    }
    for (std::size_t i = 0; i < traj.edge_count(); ++i) {
        if (!sees(poly, traj.vertex(i), traj.vertex(i + 1))) {
            std::ostringstream msg;
            msg << name << " edge " << i << " " << traj.vertex(i) << "-" << traj.vertex(i + 1)
                << " leaves the polygon";
            throw ValidationError(msg.str());
        }
    }
}

Scene make_scene(std::vector<Point> polygon, std::vector<Point> tau_q, std::vector<Point> tau_r) {
    Scene s;
    s.polygon = SimplePolygon(std::move(polygon));
    if (s.polygon.was_reversed())
        s.warnings.emplace_back("polygon given clockwise; reversed to counterclockwise");
    s.tau_q = Trajectory(std::move(tau_q));
    s.tau_r = Trajectory(std::move(tau_r));
    validate_trajectory(s.polygon, s.tau_q, "tau_q");
    validate_trajectory(s.polygon, s.tau_r, "tau_r");
    return s;
}

IntegralityParams integrality_params(const SimplePolygon& poly, std::span<const Trajectory> trajs) {
    IntegralityParams out;
    mpz_class largest = 0;
    auto visit = [&](const Point& p) {
        for (const Rational* c : {&p.x(), &p.y()}) {
            if (c->get_den() != 1)
                return false;
            mpz_class a = abs(c->get_num());
            if (a > largest)
                largest = a;
        }
        return true;
    };
    for (const Point& p : poly.vertices()) {
        if (!visit(p))
            return out;
    }
    for (const Trajectory& t : trajs) {
        for (const Point& p : t.vertices()) {
            if (!visit(p))
                return out;
        }
    }
    if (largest == 0 || !largest.fits_slong_p())
        return out;
    out.M = largest.get_si();
    out.L = 20 * out.M;
    out.available = true;
    out.d = Rational(1, static_cast<unsigned long>(out.L));
    return out;
}

IntegralityParams integrality_params(const Scene& scene) {
    const Trajectory trajs[] = {scene.tau_q, scene.tau_r};
    return integrality_params(scene.polygon, trajs);
}

namespace fixtures {

SimplePolygon square() {
    return SimplePolygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
}

SimplePolygon upoly() {
    return SimplePolygon({{0, 0}, {10, 0}, {10, 10}, {8, 10}, {8, 2}, {2, 2}, {2, 10}, {0, 10}});
}

SimplePolygon comb(int k) {
    if (k < 1)
        throw std::invalid_argument("comb needs at least one tooth");
    const long width = 2L * k + 1;
    std::vector<Point> v{{0, 0}, {width, 0}, {width, 2}};
    for (long i = k - 1; i >= 0; --i) {
        v.emplace_back(2 * i + 2, 2L);
        v.emplace_back(2 * i + 2, 10L);
        v.emplace_back(2 * i + 1, 10L);
        v.emplace_back(2 * i + 1, 2L);
    }
    v.emplace_back(0L, 2L);
    return SimplePolygon(std::move(v));
}

}  // namespace fixtures

}  // namespace polyvis
