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

#include "polyvis/range_trees.hpp"

#include <cmath>
#include <stdexcept>

#include "polyvis/visibility.hpp"

namespace polyvis {

Point refine_boundary(const Segment& seg, const Point& viewer, const SimplePolygon& poly, double eps,
                      std::size_t* probes)
{
    std::size_t count = 0;
    bool see_a = sees(poly, viewer, seg.a);
    bool see_b = sees(poly, viewer, seg.b);
    if (see_a == see_b)
        throw std::invalid_argument("refine_boundary needs exactly one visible endpoint");
    if (eps >= seg.length()) {
        if (probes)
            *probes = 0;
        return seg.at(Rational(1, 2));
    }
    // lo stays visible, hi stays hidden
    Rational lo = see_a ? Rational(0) : Rational(1);
    Rational hi = see_a ? Rational(1) : Rational(0);
    double len = seg.length();
    double width = len;
    while (width > eps) {
        Rational mid = (lo + hi) / 2;
        mid.canonicalize();
        ++count;
        if (sees(poly, viewer, seg.at(mid)))
            lo = mid;
        else
            hi = mid;
        width /= 2.0;
    }
    if (probes)
        *probes = count;
    return seg.at(lo);
}

VisRangeTree::VisRangeTree(Segment host, double d)
    : host_(std::move(host))
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::invalid_argument("range tree resolution must be positive");
    double ratio = host_.length() / d;
    double n = std::ceil(ratio - 1e-9);
    if (n < 1.0)
        n = 1.0;
    if (n > 1e8)
        throw std::invalid_argument("range tree resolution too fine for host segment");
    leaves_ = static_cast<std::size_t>(n);
    nodes_.reserve(2 * leaves_);
    build(0, leaves_, 0);
}

int VisRangeTree::build(std::size_t first, std::size_t last, int depth)
{
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{first, last, -1, -1, depth, {}});
    height_ = std::max(height_, depth);
    if (last - first > 1) {
        std::size_t mid = first + (last - first + 1) / 2;
        int l = build(first, mid, depth + 1);
        int r = build(mid, last, depth + 1);
        nodes_[id].left = l;
        nodes_[id].right = r;
    }
    return id;
}

std::pair<Rational, Rational> VisRangeTree::leaf_range(std::size_t leaf) const
{
    Rational lo(static_cast<long>(leaf), static_cast<long>(leaves_));
    Rational hi(static_cast<long>(leaf + 1), static_cast<long>(leaves_));
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

std::pair<Rational, Rational> VisRangeTree::node_range(const Node& n) const
{
    Rational lo(static_cast<long>(n.first_leaf), static_cast<long>(leaves_));
    Rational hi(static_cast<long>(n.last_leaf), static_cast<long>(leaves_));
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

std::size_t VisRangeTree::leaf_of(const Rational& t) const
{
    if (t <= 0)
        return 0;
    if (t >= 1)
        return leaves_ - 1;
    Rational scaled = t * static_cast<long>(leaves_);
    mpz_class q = scaled.get_num() / scaled.get_den();
    std::size_t i = static_cast<std::size_t>(q.get_ui());
    if (Rational(q) == scaled && i > 0)
        --i;
    return std::min(i, leaves_ - 1);
}

std::size_t VisRangeTree::mark(const SimplePolygon& poly, const Point& viewer, std::int64_t stamp, double eps)
{
    auto vi = visible_interval(poly, viewer, host_);
    return mark_interval(poly, viewer, vi.empty, vi.lo, vi.hi, stamp, eps);
}

std::size_t VisRangeTree::mark_interval(const SimplePolygon& poly, const Point& viewer, bool empty,
                                        const Rational& lo, const Rational& hi, std::int64_t stamp, double eps)
{
    if (empty)
        return 0;
    std::vector<int> per_level(static_cast<std::size_t>(height_) + 1, 0);
    std::size_t marked = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        Node& n = nodes_[static_cast<std::size_t>(id)];
        auto [a, b] = node_range(n);
        if (b <= lo || a >= hi)
            continue;
        if (lo <= a && b <= hi) {
            auto pos = std::lower_bound(n.stamps.begin(), n.stamps.end(), stamp);
            if (pos == n.stamps.end() || *pos != stamp)
                n.stamps.insert(pos, stamp);
            ++marked;
            int& c = per_level[static_cast<std::size_t>(n.depth)];
            if (++c > 2)
                throw std::logic_error("range tree marked more than two nodes on one level");
            continue;
        }
        if (n.left < 0) {
            PartialLeaf pl;
            pl.leaf = n.first_leaf;
            pl.stamp = stamp;
            pl.lo = std::max(a, lo);
            pl.hi = std::min(b, hi);
            Segment leaf_seg(host_.at(a), host_.at(b));
            bool see_a = a >= lo;
            bool see_b = b <= hi;
            if (see_a != see_b) {
                Point p = refine_boundary(leaf_seg, viewer, poly, eps);
                Rational t = a + param_on(leaf_seg.a, leaf_seg.b, p) * (b - a);
                t.canonicalize();
                if (see_a)
                    pl.hi = t;
                else
                    pl.lo = t;
            }
            partial_.push_back(pl);
            continue;
        }
        stack.push_back(n.right);
        stack.push_back(n.left);
    }
    for (int c : per_level)
        max_per_level_ = std::max(max_per_level_, c);
    return marked;
}

std::vector<std::int64_t> VisRangeTree::query(const Rational& lo, const Rational& hi, std::int64_t after) const
{
    std::vector<std::int64_t> out;
    if (hi < lo)
        return out;
    std::size_t last = leaf_of(hi);
    std::size_t first = leaf_of(lo);
    // proper ranges take leaves they overlap; a point on a boundary takes both sides
    if (first < last && leaf_range(first).second == lo)
        ++first;
    else if (lo == hi && last + 1 < leaves_ && leaf_range(last).second == hi)
        ++last;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const Node& n = nodes_[static_cast<std::size_t>(stack.back())];
        stack.pop_back();
        if (n.last_leaf <= first || n.first_leaf > last)
            continue;
        auto it = std::lower_bound(n.stamps.begin(), n.stamps.end(), after);
        out.insert(out.end(), it, n.stamps.end());
        if (n.left >= 0) {
            stack.push_back(n.left);
            stack.push_back(n.right);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace polyvis
