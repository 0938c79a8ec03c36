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

#ifndef POLYVIS_RANGE_TREES_HPP
#define POLYVIS_RANGE_TREES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "polyvis/geometry.hpp"

/// \file
/// Visibility range tree over length-d pieces of a host segment, and the
/// endpoint (stabbing) tree used by the segment structure.

namespace polyvis {

/// Point within `eps` of the visibility boundary on `seg`, found by
/// bisection with the segment predicate. When eps is at least the segment
/// length the midpoint is returned without probing. Exactly one endpoint
/// must be visible, else std::invalid_argument.
/// `probes` (optional) receives the number of predicate calls beyond the
/// two endpoint checks.
Point refine_boundary(const Segment& seg, const Point& viewer, const SimplePolygon& poly, double eps,
                      std::size_t* probes = nullptr);

/// 1D range tree over ceil(len / d) equal pieces of a host segment. Each
/// node keeps the (sorted, append-only) list of timestamp indices at which
/// it was a maximal fully visible node.
class VisRangeTree {
public:
    struct Node {
        std::size_t first_leaf = 0;  ///< leaves [first_leaf, last_leaf)
        std::size_t last_leaf = 0;
        int left = -1;
        int right = -1;
        int depth = 0;
        std::vector<std::int64_t> stamps;
    };

    /// A leaf only partly visible at some timestamp, with its visible part.
    struct PartialLeaf {
        std::size_t leaf = 0;
        std::int64_t stamp = 0;
        Rational lo{0};  ///< visible host-parameter range inside the leaf
        Rational hi{0};
    };

    /// Throws std::invalid_argument when d <= 0.
    VisRangeTree(Segment host, double d);

    const Segment& host() const { return host_; }
    std::size_t leaf_count() const { return leaves_; }
    int height() const { return height_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& root() const { return nodes_[0]; }
    /// Host-parameter range of a leaf.
    std::pair<Rational, Rational> leaf_range(std::size_t leaf) const;
    /// Leaf whose range contains host parameter t (the lower one on ties).
    std::size_t leaf_of(const Rational& t) const;

    /// Marks the maximal fully visible nodes for a viewer at timestamp index
    /// `stamp`; returns the number of nodes marked. Throws std::logic_error
    /// if a level would receive more than two marks.
    std::size_t mark(const SimplePolygon& poly, const Point& viewer, std::int64_t stamp, double eps);
    /// Same, with the viewer's visible host interval already known.
    std::size_t mark_interval(const SimplePolygon& poly, const Point& viewer, bool empty, const Rational& lo,
                              const Rational& hi, std::int64_t stamp, double eps);

    /// Timestamps >= after stored on any ancestor of a leaf overlapping the
    /// parameter range [lo, hi] (both neighbours for a single boundary
    /// point), ascending and without repeats.
    std::vector<std::int64_t> query(const Rational& lo, const Rational& hi, std::int64_t after) const;

    const std::vector<PartialLeaf>& partial_leaves() const { return partial_; }
    /// Largest per-level mark count seen so far.
    int max_marks_per_level() const { return max_per_level_; }

private:
    int build(std::size_t first, std::size_t last, int depth);
    std::pair<Rational, Rational> node_range(const Node& n) const;

    Segment host_;
    std::size_t leaves_ = 0;
    int height_ = 0;
    std::vector<Node> nodes_;
    std::vector<PartialLeaf> partial_;
    int max_per_level_ = 0;
};

/// Stabbing structure over closed intervals. Endpoints split the line into
/// 2k + 1 elementary slots (points and open gaps); each interval is stored
/// on its canonical segment-tree nodes (its participants).
template <class Payload>
class EndpointTree {
public:
    struct Entry {
        double lo = 0.0;
        double hi = 0.0;
        Payload payload{};
    };

    EndpointTree() = default;

    explicit EndpointTree(std::vector<Entry> entries)
        : entries_(std::move(entries))
    {
        for (const Entry& e : entries_) {
            keys_.push_back(e.lo);
            keys_.push_back(e.hi);
        }
        std::sort(keys_.begin(), keys_.end());
        keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
        slots_ = 2 * keys_.size() + 1;
        nodes_.assign(4 * slots_, {});
        participants_.assign(entries_.size(), 0);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].lo > entries_[i].hi)
                continue;
            std::size_t a = 2 * key_index(entries_[i].lo) + 1;
            std::size_t b = 2 * key_index(entries_[i].hi) + 1;
            insert(1, 0, slots_ - 1, a, b, i);
        }
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    /// Number of canonical nodes holding entry i.
    std::size_t participants(std::size_t i) const { return participants_[i]; }

    /// Indices of entries whose interval contains x, ordered by
    /// (lo, hi, index).
    std::vector<std::size_t> stab(double x) const {
        std::vector<std::size_t> out;
        if (entries_.empty())
            return out;
        auto it = std::lower_bound(keys_.begin(), keys_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - keys_.begin());
        std::size_t slot = (it != keys_.end() && *it == x) ? 2 * i + 1 : 2 * i;
        std::size_t node = 1, l = 0, r = slots_ - 1;
        while (true) {
            out.insert(out.end(), nodes_[node].begin(), nodes_[node].end());
            if (l == r)
                break;
            std::size_t m = (l + r) / 2;
            if (slot <= m) {
                node = 2 * node;
                r = m;
            } else {
                node = 2 * node + 1;
                l = m + 1;
            }
        }
        std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(entries_[a].lo, entries_[a].hi, a) < std::tie(entries_[b].lo, entries_[b].hi, b);
        });
        return out;
    }

    std::vector<Payload> stab_payloads(double x) const {
        std::vector<Payload> out;
        for (std::size_t i : stab(x))
            out.push_back(entries_[i].payload);
        return out;
    }

private:
    std::size_t key_index(double v) const {
        return static_cast<std::size_t>(std::lower_bound(keys_.begin(), keys_.end(), v) - keys_.begin());
    }

    void insert(std::size_t node, std::size_t l, std::size_t r, std::size_t a, std::size_t b, std::size_t idx) {
        if (b < l || r < a)
            return;
        if (a <= l && r <= b) {
            nodes_[node].push_back(idx);
            ++participants_[idx];
            return;
        }
        std::size_t m = (l + r) / 2;
        insert(2 * node, l, m, a, b, idx);
        insert(2 * node + 1, m + 1, r, a, b, idx);
    }

    std::vector<Entry> entries_;
    std::vector<double> keys_;
    std::size_t slots_ = 1;
    std::vector<std::vector<std::size_t>> nodes_;
    std::vector<std::size_t> participants_;
};

}  // namespace polyvis

#endif  // POLYVIS_RANGE_TREES_HPP
