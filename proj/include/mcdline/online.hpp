#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>

#include "mcdline/offline.hpp"

namespace mcd {

// How much invariant checking to do during an online run. Cheap checks are
// O(cost) per run; Full adds per-time-step sweeps over the interval
// hierarchy (roughly O(n log n) per step) and denser spot checks.
enum class AssertLevel { Off, Cheap, Full };

struct CommitRecord {
    Interval interval;
    Time time = 0;       // commit time t
    Replica stored;      // the replica added to C_{t+1}
};

struct DeliveryRecord {
    std::size_t request_index = 0;
    Replica request;
    Node serving_node = 0;  // q_on, at the request's time
    Cost online_radius = 0;
    bool served_from_cache = true;      // q_on in C_t vs. an earlier same-time path
    std::size_t source_request = 0;     // valid when !served_from_cache
};

// Full state of one online run; grows monotonically while the run proceeds.
struct OnlineState {
    Instance inst;  // requests accumulate as they arrive
    IntervalSystem sys;
    std::set<GridEdge> edges;
    Cost horizontal_cost = 0;
    Cost arc_cost = 0;
    Cost total_cost() const { return horizontal_cost + arc_cost; }
    Cost root_arc_cost = 0;  // arcs on the origin column

    std::vector<std::vector<Node>> cache_history;  // cache_history[t] = C_t, sorted
    std::vector<CommitRecord> commits;
    std::vector<DeliveryRecord> deliveries;
    TriangleTrace triangle;  // the embedded simulation
    std::vector<std::pair<Time, GridEdge>> event_log;
    bool arcs_equal_commits = true;  // whether the arc/commit bound held with equality
};

// Event-driven engine: feed requests in arrival order; the clock advances
// implicitly (or explicitly via advance_to) and each elapsed time step runs
// one storage phase. No storage phase runs at the final time.
class LineonEngine {
public:
    LineonEngine(Node n, Node origin, std::optional<std::int64_t> delta = std::nullopt,
                 AssertLevel level = AssertLevel::Cheap, std::ostream* trace = nullptr);

    void add_request(Replica r);
    void advance_to(Time t);  // runs storage phases for current..t-1
    // End-of-run invariant checks (delivery corollary, commit charging
    // bound, arc/commit accounting, sampled cache-coverage checks).
    void finish();

    Time current_time() const { return current_time_; }
    const OnlineState& state() const { return state_; }
    const IntervalSystem& system() const { return state_.sys; }
    const DeliveryRecord& last_delivery() const { return state_.deliveries.back(); }
    std::span<const std::pair<Time, GridEdge>> edges_since(std::size_t cursor) const;
    std::vector<Node> current_cache() const;

private:
    void storage_phase(Time t);
    void deliver(Replica r);
    bool add_edge(GridEdge e, Time event_time);
    void note_base(Node lo, Node hi, Time t);
    std::optional<Node> nearest_source(Node v, std::size_t* source_request,
                                       bool* from_cache) const;
    std::optional<Node> select_store_candidate(const Interval& I, Time t) const;
    void full_asserts_pre_storage(Time t) const;
    void check_commit_overlap(Time t, std::size_t first_commit) const;

    AssertLevel level_;
    std::ostream* trace_;
    OnlineState state_;
    Time current_time_ = 0;
    std::set<Node> cache_;  // C_{current_time_}
    std::unique_ptr<TriangleSim> triangle_;
    ReplicaForest forest_;
    // Base[t] for the current time, as merged node ranges.
    std::vector<std::pair<Node, Node>> base_now_;
    // P_Von ranges of same-time requests already delivered: (lo, hi, request).
    struct SourceRange {
        Node lo, hi;
        std::size_t request_index;
    };
    std::vector<SourceRange> pvon_;
    // last time each interval contained a base replica: per level, index -> time
    std::vector<std::map<std::int64_t, Time>> last_base_;
    bool finished_ = false;
};

struct LineonResult {
    OnlineState state;
    SolutionReport report;
};

LineonResult run_lineon(const Instance& inst, std::optional<std::int64_t> delta = std::nullopt,
                        AssertLevel level = AssertLevel::Cheap, std::ostream* trace = nullptr);

// Checks that every logged edge addition was legal at its event time: a
// horizontal edge must live at the event's time and an arc must leave it.
struct CausalityAudit {
    bool ok = true;
    std::optional<std::pair<Time, GridEdge>> first_violation;
};
CausalityAudit audit_causality(std::span<const std::pair<Time, GridEdge>> event_log);

struct CompetitiveReport {
    Cost cost_lineon = 0;
    Cost cost_triangle = 0;
    Cost sum_radii = 0;
    std::optional<Cost> cost_exact;        // absent when the oracle guard trips
    std::optional<Cost> cost_exact_with_root;
    double ratio_vs_triangle = 1.0;
    double ratio_vs_exact = 0.0;  // NaN when cost_exact absent
    double ratio_vs_sum_radii = 1.0;
    std::int64_t delta_used = 1;
    Node padded_n = 1;
    double bound_rhs = 0.0;  // 8 + sqrt(10*log2(padded_n))
    bool bound_satisfied = true;
};

CompetitiveReport competitive_report(const Instance& inst,
                                     std::optional<std::int64_t> delta = std::nullopt,
                                     AssertLevel level = AssertLevel::Cheap);

}  // namespace mcd
