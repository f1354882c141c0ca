#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mcd {

using Node = std::int64_t;  // 1-based network node
using Time = std::int64_t;  // 0-based time step
using Cost = std::int64_t;

// A grid vertex (v,t): node v at time t.
struct Replica {
    Node node = 0;
    Time time = 0;
    auto operator<=>(const Replica&) const = default;
};

enum class EdgeKind : std::uint8_t { Horizontal, Arc };

// Horizontal edge {(v,t),(v+1,t)} or arc (v,t)->(v,t+1); `anchor` is the
// left (resp. lower) endpoint. Horizontal edges are undirected, arcs are not.
struct GridEdge {
    EdgeKind kind = EdgeKind::Horizontal;
    Replica anchor;
    auto operator<=>(const GridEdge&) const = default;

    Replica other() const {
        if (kind == EdgeKind::Horizontal) return {anchor.node + 1, anchor.time};
        return {anchor.node, anchor.time + 1};
    }
};

inline GridEdge horizontal_edge(Node left, Time t) { return {EdgeKind::Horizontal, {left, t}}; }
inline GridEdge arc_edge(Node v, Time t) { return {EdgeKind::Arc, {v, t}}; }

// A line network of size n with an origin node and time-ordered requests.
struct Instance {
    Node n = 1;
    Node origin = 1;
    std::vector<Replica> requests;

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;

    // Time of the last request, 0 when there are none.
    Time horizon() const { return requests.empty() ? 0 : requests.back().time; }
};

// d((u,s),(v,t)) = t-s+|v-u| when s <= t; infinite (nullopt) otherwise.
// Asymmetric: time only moves forward.
std::optional<Cost> distance(Replica a, Replica b);

// The |a.node-b.node| horizontal edges between two same-time replicas.
std::vector<GridEdge> horizontal_path(Replica a, Replica b);

// The b.time-a.time arcs up the column shared by a and b.
std::vector<GridEdge> vertical_path(Replica a, Replica b);

// Rectangle subgraph: the replicas of nodes [lo,hi] over times [t0,t1].
struct Rectangle {
    Node lo = 1, hi = 1;
    Time t0 = 0, t1 = 0;
    bool contains(Replica r) const {
        return r.node >= lo && r.node <= hi && r.time >= t0 && r.time <= t1;
    }
};

// One cell of the level-l partition of [1,padded_n] into blocks of size
// delta*2^l. Indices are 1-based.
struct Interval {
    int level = 0;
    std::int64_t index = 1;
    std::int64_t delta = 1;
    Node padded_n = 1;

    std::int64_t size() const { return delta << level; }
    Node lo() const { return (index - 1) * size() + 1; }
    Node hi() const { return index * size(); }
    bool contains(Node v) const { return v >= lo() && v <= hi(); }

    // N(I) = left neighbor + I + right neighbor, clipped to [1,padded_n].
    std::pair<Node, Node> neighborhood() const;

    auto operator<=>(const Interval&) const = default;
};

// The unique level-`level` interval containing v.
Interval interval_of(Node v, int level, std::int64_t delta, Node padded_n);

// Active: some base replica lies in I within the last 2^level(I)+1 time
// steps including t (window clipped at time 0). Stay-active: same with the
// window shorter by one. stay_active implies active.
bool is_active(const Interval& I, Time t, std::span<const Replica> base);
bool is_stay_active(const Interval& I, Time t, std::span<const Replica> base);

// The interval hierarchy over a padded line. padded_n/delta is a power of
// two so the partition formulas are exact; requests never land on the
// virtual nodes beyond n.
struct IntervalSystem {
    Node n = 1;         // real line size
    Node padded_n = 1;  // delta * 2^levels
    std::int64_t delta = 1;
    int levels = 0;  // top level; level range is [0, levels]

    // Auto delta: max(1, round(sqrt(10*log2(padded_n)))), iterated twice so
    // the padding and the delta agree.
    static IntervalSystem make(Node n, std::optional<std::int64_t> delta = std::nullopt);

    std::int64_t intervals_at(int level) const {
        return (padded_n / delta) >> level;
    }
    Interval interval_of(Node v, int level) const {
        return mcd::interval_of(v, level, delta, padded_n);
    }
};

}  // namespace mcd
