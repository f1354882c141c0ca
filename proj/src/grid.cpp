#include "mcdline/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mcd {

void Instance::validate() const {
    if (n < 1) throw std::invalid_argument("instance: n must be positive");
    if (origin < 1 || origin > n) throw std::invalid_argument("instance: origin out of [1,n]");
    Time prev = 0;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const Replica& r = requests[i];
        if (r.node < 1 || r.node > n)
            throw std::invalid_argument("instance: request node out of [1,n] at index " +
                                        std::to_string(i));
        if (r.time < 0) throw std::invalid_argument("instance: negative request time");
        if (r.time < prev)
            throw std::invalid_argument("instance: request times must be non-decreasing");
        prev = r.time;
    }
}

std::optional<Cost> distance(Replica a, Replica b) {
    if (a.time > b.time) return std::nullopt;
    return (b.time - a.time) + std::llabs(b.node - a.node);
}

std::vector<GridEdge> horizontal_path(Replica a, Replica b) {
    if (a.time != b.time)
        throw std::invalid_argument("horizontal_path: replicas at different times");
    Node lo = std::min(a.node, b.node), hi = std::max(a.node, b.node);
    std::vector<GridEdge> edges;
    edges.reserve(static_cast<std::size_t>(hi - lo));
    for (Node v = lo; v < hi; ++v) edges.push_back(horizontal_edge(v, a.time));
    return edges;
}

std::vector<GridEdge> vertical_path(Replica a, Replica b) {
    if (a.node != b.node) throw std::invalid_argument("vertical_path: different nodes");
    if (a.time > b.time) throw std::invalid_argument("vertical_path: reversed times");
    std::vector<GridEdge> edges;
    edges.reserve(static_cast<std::size_t>(b.time - a.time));
    for (Time t = a.time; t < b.time; ++t) edges.push_back(arc_edge(a.node, t));
    return edges;
}

std::pair<Node, Node> Interval::neighborhood() const {
    Node lo_n = std::max<Node>(1, lo() - size());
    Node hi_n = std::min<Node>(padded_n, hi() + size());
    return {lo_n, hi_n};
}

Interval interval_of(Node v, int level, std::int64_t delta, Node padded_n) {
    if (v < 1 || v > padded_n) throw std::invalid_argument("interval_of: node out of range");
    std::int64_t cell = delta << level;
    if (level < 0 || cell > padded_n)
        throw std::invalid_argument("interval_of: level out of range");
    return Interval{level, (v - 1) / cell + 1, delta, padded_n};
}

namespace {
bool base_in_window(const Interval& I, Time lo, Time hi, std::span<const Replica> base) {
    for (const Replica& r : base)
        if (r.time >= lo && r.time <= hi && I.contains(r.node)) return true;
    return false;
}
}  // namespace

bool is_active(const Interval& I, Time t, std::span<const Replica> base) {
    Time window = Time{1} << I.level;
    return base_in_window(I, std::max<Time>(0, t - window), t, base);
}

bool is_stay_active(const Interval& I, Time t, std::span<const Replica> base) {
    Time window = (Time{1} << I.level) - 1;
    return base_in_window(I, std::max<Time>(0, t - window), t, base);
}

namespace {
Node ceil_pow2(Node x) {
    Node p = 1;
    while (p < x) p <<= 1;
    return p;
}

Node pad_line(Node n, std::int64_t delta) {
    Node blocks = (n + delta - 1) / delta;
    return delta * ceil_pow2(blocks);
}

std::int64_t auto_delta(Node padded_n) {
    double d = std::round(std::sqrt(10.0 * std::log2(static_cast<double>(padded_n))));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(d));
}
}  // namespace

IntervalSystem IntervalSystem::make(Node n, std::optional<std::int64_t> delta) {
    if (n < 1) throw std::invalid_argument("IntervalSystem: n must be positive");
    std::int64_t d;
    if (delta) {
        if (*delta < 1) throw std::invalid_argument("IntervalSystem: delta must be positive");
        d = *delta;
    } else {
        d = auto_delta(ceil_pow2(n));
        d = auto_delta(pad_line(n, d));
    }
    IntervalSystem sys;
    sys.n = n;
    sys.delta = d;
    sys.padded_n = pad_line(n, d);
    Node m = sys.padded_n / d;
    sys.levels = 0;
    while ((Node{1} << sys.levels) < m) ++sys.levels;
    return sys;
}

}  // namespace mcd
