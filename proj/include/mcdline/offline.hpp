#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "mcdline/grid.hpp"

namespace mcd {

// Union-find over dynamically interned replicas; used to keep the solution
// a tree while adding base edges (the "skip the edge that closes a circle"
// rule).
class ReplicaForest {
public:
    // Returns true and unions the components if the edge endpoints were in
    // different components; returns false (edge would close a cycle) otherwise.
    bool link(Replica a, Replica b);
    bool connected(Replica a, Replica b);

private:
    int id_of(Replica r);
    int find(int x);
    std::map<Replica, int> ids_;
    std::vector<int> parent_;
    std::vector<int> rank_;
};

struct TriangleRequestRecord {
    Replica request;
    Replica serving;   // q_i, chosen in step T1
    Cost radius = 0;   // rho_i = d(q_i, r_i)
    Node base_lo = 0;  // Base(i) = nodes [base_lo, base_hi] at request.time
    Node base_hi = 0;
    Cost edges_added = 0;  // always <= 3*radius
};

// Full trace of one Triangle run: the per-request records plus the
// accumulated solution edge set.
struct TriangleTrace {
    std::vector<TriangleRequestRecord> per_request;
    std::set<GridEdge> edges;
    Cost horizontal_cost = 0;
    Cost arc_cost = 0;
    Cost total_cost() const { return horizontal_cost + arc_cost; }

    // Distinct base replicas as merged per-time node ranges.
    std::map<Time, std::vector<std::pair<Node, Node>>> base_ranges;
    Cost base_size() const;  // |Base|

    // Edge additions tagged with the time of the request being handled;
    // feeds the causality audit (where this trace is the negative control,
    // since T3 adds arcs retroactively whenever s_i < t_i).
    std::vector<std::pair<Time, GridEdge>> event_log;
};

Cost sum_radii(const TriangleTrace& trace);

// Incremental Triangle state, so the online algorithm can simulate it
// request by request. Tie-breaking in T1: smallest distance, then smallest
// node, then smallest time.
class TriangleSim {
public:
    explicit TriangleSim(const Instance& inst);
    // Requests must be fed in instance order (non-decreasing times).
    const TriangleRequestRecord& handle_request(Replica r);
    const TriangleTrace& trace() const { return trace_; }

private:
    Replica nearest_in_solution(Replica r) const;
    void add_solution_replica(Replica r);
    bool add_edge(GridEdge e, Time event_time);  // returns true if new

    Node n_;
    Node origin_;
    TriangleTrace trace_;
    // Solution replicas per time slice, for the T1 nearest-replica search.
    std::map<Time, std::set<Node>> slices_;
    ReplicaForest forest_;
};

TriangleTrace run_triangle(const Instance& inst);

// Feasibility/cost report for an arbitrary edge set.
struct SolutionReport {
    std::vector<GridEdge> edges;
    Cost total_cost = 0;
    Cost horizontal_cost = 0;
    Cost arc_cost = 0;
    bool feasible = false;
    // One y-monotone witness path (as replica sequence from the origin
    // replica) per request; empty for requests at or after the first
    // unreachable one.
    std::vector<std::vector<Replica>> witnesses;
    std::optional<std::size_t> first_unreachable;
};

// feasible <=> every request reachable from (origin,0) using horizontal
// edges in either direction and arcs forward in time.
SolutionReport check_solution(const Instance& inst, const std::set<GridEdge>& edges);
SolutionReport check_solution(const Instance& inst, const std::vector<GridEdge>& edges);

}  // namespace mcd
