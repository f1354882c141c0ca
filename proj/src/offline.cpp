#include "mcdline/offline.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace mcd {

int ReplicaForest::id_of(Replica r) {
    auto [it, inserted] = ids_.try_emplace(r, static_cast<int>(parent_.size()));
    if (inserted) {
        parent_.push_back(it->second);
        rank_.push_back(0);
    }
    return it->second;
}

int ReplicaForest::find(int x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool ReplicaForest::connected(Replica a, Replica b) {
    return find(id_of(a)) == find(id_of(b));
}

bool ReplicaForest::link(Replica a, Replica b) {
    int ra = find(id_of(a)), rb = find(id_of(b));
    if (ra == rb) return false;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
}

Cost TriangleTrace::base_size() const {
    Cost total = 0;
    for (const auto& [t, ranges] : base_ranges)
        for (const auto& [lo, hi] : ranges) total += hi - lo + 1;
    return total;
}

Cost sum_radii(const TriangleTrace& trace) {
    Cost s = 0;
    for (const auto& rec : trace.per_request) s += rec.radius;
    return s;
}

TriangleSim::TriangleSim(const Instance& inst) : n_(inst.n), origin_(inst.origin) {
    inst.validate();
    slices_[0].insert(origin_);
}

Replica TriangleSim::nearest_in_solution(Replica r) const {
    Replica best{};
    Cost best_dist = -1;
    Node best_node = 0;
    Time best_time = 0;
    auto consider = [&](Node u, Time s) {
        Cost d = (r.time - s) + std::llabs(r.node - u);
        if (best_dist < 0 || d < best_dist || (d == best_dist && u < best_node) ||
            (d == best_dist && u == best_node && s < best_time)) {
            best_dist = d;
            best_node = u;
            best_time = s;
            best = {u, s};
        }
    };
    auto it = slices_.upper_bound(r.time);
    while (it != slices_.begin()) {
        --it;
        Time s = it->first;
        if (best_dist >= 0 && r.time - s > best_dist) break;
        const std::set<Node>& nodes = it->second;
        auto lb = nodes.lower_bound(r.node);
        if (lb != nodes.end()) consider(*lb, s);
        if (lb != nodes.begin()) consider(*std::prev(lb), s);
        // a same-distance smaller node can only be the predecessor, already
        // considered; ties across slices are handled by the scan bound above
        if (it == slices_.begin()) break;
    }
    return best;
}

void TriangleSim::add_solution_replica(Replica r) { slices_[r.time].insert(r.node); }

bool TriangleSim::add_edge(GridEdge e, Time event_time) {
    if (!trace_.edges.insert(e).second) return false;
    if (e.kind == EdgeKind::Horizontal)
        ++trace_.horizontal_cost;
    else
        ++trace_.arc_cost;
    trace_.event_log.emplace_back(event_time, e);
    forest_.link(e.anchor, e.other());
    add_solution_replica(e.anchor);
    add_solution_replica(e.other());
    return true;
}

namespace {
void merge_range(std::vector<std::pair<Node, Node>>& ranges, Node lo, Node hi) {
    std::vector<std::pair<Node, Node>> out;
    for (auto& [a, b] : ranges) {
        if (b + 1 < lo || hi + 1 < a) {
            out.emplace_back(a, b);
        } else {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    out.emplace_back(lo, hi);
    std::sort(out.begin(), out.end());
    ranges = std::move(out);
}
}  // namespace

const TriangleRequestRecord& TriangleSim::handle_request(Replica r) {
    if (r.node < 1 || r.node > n_ || r.time < 0)
        throw std::invalid_argument("triangle: request out of grid");
    if (!trace_.per_request.empty() && r.time < trace_.per_request.back().request.time)
        throw std::invalid_argument("triangle: requests must arrive in time order");

    TriangleRequestRecord rec;
    rec.request = r;
    rec.serving = nearest_in_solution(r);  // T1
    rec.radius = *distance(rec.serving, r);  // T2
    rec.base_lo = std::max<Node>(1, r.node - rec.radius);
    rec.base_hi = std::min<Node>(n_, r.node + rec.radius);

    Cost before = trace_.total_cost();

    // T3: store a copy at the serving node from s_i to t_i.
    for (const GridEdge& e : vertical_path(rec.serving, {rec.serving.node, r.time}))
        add_edge(e, r.time);

    // T4: deliver to all base replicas, skipping edges that close a circle.
    for (Node v = rec.base_lo; v < rec.base_hi; ++v) {
        GridEdge e = horizontal_edge(v, r.time);
        if (trace_.edges.count(e)) continue;
        if (!forest_.connected(e.anchor, e.other())) {
            add_edge(e, r.time);
        } else {
            // skipped, but both endpoints are still base replicas
            add_solution_replica(e.anchor);
            add_solution_replica(e.other());
        }
    }
    if (rec.base_lo == rec.base_hi) add_solution_replica({rec.base_lo, r.time});

    rec.edges_added = trace_.total_cost() - before;
    merge_range(trace_.base_ranges[r.time], rec.base_lo, rec.base_hi);
    trace_.per_request.push_back(rec);
    return trace_.per_request.back();
}

TriangleTrace run_triangle(const Instance& inst) {
    TriangleSim sim(inst);
    for (const Replica& r : inst.requests) sim.handle_request(r);
    return sim.trace();
}

namespace {
void validate_edges(const Instance& inst, const std::set<GridEdge>& edges) {
    for (const GridEdge& e : edges) {
        if (e.anchor.time < 0 || e.anchor.node < 1 || e.anchor.node > inst.n)
            throw std::invalid_argument("check_solution: edge out of grid");
        if (e.kind == EdgeKind::Horizontal && e.anchor.node + 1 > inst.n)
            throw std::invalid_argument("check_solution: horizontal edge leaves the line");
    }
}
}  // namespace

SolutionReport check_solution(const Instance& inst, const std::set<GridEdge>& edges) {
    inst.validate();
    validate_edges(inst, edges);

    SolutionReport rep;
    rep.edges.assign(edges.begin(), edges.end());
    for (const GridEdge& e : edges)
        (e.kind == EdgeKind::Horizontal ? rep.horizontal_cost : rep.arc_cost) += 1;
    rep.total_cost = rep.horizontal_cost + rep.arc_cost;

    std::map<Replica, std::vector<Replica>> adj;  // arcs only forward in time
    for (const GridEdge& e : edges) {
        Replica a = e.anchor, b = e.other();
        adj[a].push_back(b);
        if (e.kind == EdgeKind::Horizontal) adj[b].push_back(a);
    }

    Replica root{inst.origin, 0};
    std::map<Replica, Replica> parent;
    parent[root] = root;
    std::deque<Replica> queue{root};
    while (!queue.empty()) {
        Replica cur = queue.front();
        queue.pop_front();
        auto it = adj.find(cur);
        if (it == adj.end()) continue;
        for (Replica nxt : it->second) {
            if (parent.try_emplace(nxt, cur).second) queue.push_back(nxt);
        }
    }

    rep.feasible = true;
    rep.witnesses.resize(inst.requests.size());
    for (std::size_t i = 0; i < inst.requests.size(); ++i) {
        const Replica& r = inst.requests[i];
        if (!parent.count(r)) {
            rep.feasible = false;
            if (!rep.first_unreachable) rep.first_unreachable = i;
            continue;
        }
        std::vector<Replica> path{r};
        while (path.back() != root) path.push_back(parent.at(path.back()));
        std::reverse(path.begin(), path.end());
        rep.witnesses[i] = std::move(path);
    }
    return rep;
}

SolutionReport check_solution(const Instance& inst, const std::vector<GridEdge>& edges) {
    return check_solution(inst, std::set<GridEdge>(edges.begin(), edges.end()));
}

}  // namespace mcd
