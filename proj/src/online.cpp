#include "mcdline/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

#include "mcdline/errors.hpp"
#include "mcdline/exact.hpp"

namespace mcd {

namespace {
void check(bool cond, const std::string& what) {
    if (!cond) throw invariant_violation(what);
}
}  // namespace

LineonEngine::LineonEngine(Node n, Node origin, std::optional<std::int64_t> delta,
                           AssertLevel level, std::ostream* trace)
    : level_(level), trace_(trace) {
    state_.inst.n = n;
    state_.inst.origin = origin;
    state_.inst.validate();
    state_.sys = IntervalSystem::make(n, delta);
    cache_.insert(origin);
    state_.cache_history.push_back({origin});
    triangle_ = std::make_unique<TriangleSim>(state_.inst);
    last_base_.resize(static_cast<std::size_t>(state_.sys.levels) + 1);
}

bool LineonEngine::add_edge(GridEdge e, Time event_time) {
    if (!state_.edges.insert(e).second) return false;
    if (e.kind == EdgeKind::Horizontal) {
        ++state_.horizontal_cost;
    } else {
        ++state_.arc_cost;
        if (e.anchor.node == state_.inst.origin) ++state_.root_arc_cost;
    }
    state_.event_log.emplace_back(event_time, e);
    forest_.link(e.anchor, e.other());
    return true;
}

void LineonEngine::note_base(Node lo, Node hi, Time t) {
    // merge into the current-time base ranges
    std::vector<std::pair<Node, Node>> merged;
    for (auto& [a, b] : base_now_) {
        if (b + 1 < lo || hi + 1 < a) {
            merged.emplace_back(a, b);
        } else {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    merged.emplace_back(lo, hi);
    std::sort(merged.begin(), merged.end());
    base_now_ = std::move(merged);

    for (int l = 0; l <= state_.sys.levels; ++l) {
        std::int64_t j_lo = state_.sys.interval_of(lo, l).index;
        std::int64_t j_hi = state_.sys.interval_of(hi, l).index;
        for (std::int64_t j = j_lo; j <= j_hi; ++j) last_base_[l][j] = t;
    }
}

std::optional<Node> LineonEngine::nearest_source(Node v, std::size_t* source_request,
                                                 bool* from_cache) const {
    std::optional<Node> best;
    Cost best_dist = 0;
    bool best_cache = false;
    std::size_t best_req = 0;
    auto consider = [&](Node u, bool cache, std::size_t req) {
        Cost d = std::llabs(u - v);
        // prefer smaller distance, then smaller node; on full ties prefer the
        // cache source (it is backed by an arc from the previous time step)
        if (!best || d < best_dist || (d == best_dist && u < *best) ||
            (d == best_dist && u == *best && cache && !best_cache)) {
            best = u;
            best_dist = d;
            best_cache = cache;
            best_req = req;
        }
    };
    auto it = cache_.lower_bound(v);
    if (it != cache_.end()) consider(*it, true, 0);
    if (it != cache_.begin()) consider(*std::prev(it), true, 0);
    for (const SourceRange& sr : pvon_) consider(std::clamp(v, sr.lo, sr.hi), false, sr.request_index);
    if (from_cache) *from_cache = best_cache;
    if (source_request) *source_request = best_req;
    return best;
}

void LineonEngine::deliver(Replica r) {
    const TriangleRequestRecord& rec = triangle_->handle_request(r);
    note_base(rec.base_lo, rec.base_hi, r.time);

    DeliveryRecord del;
    del.request_index = state_.deliveries.size();
    del.request = r;
    std::optional<Node> q = nearest_source(r.node, &del.source_request, &del.served_from_cache);
    check(q.has_value(), "delivery source missing: no cached copy or same-time path at time " +
                             std::to_string(r.time));
    del.serving_node = *q;
    del.online_radius = std::llabs(*q - r.node);

    if (level_ >= AssertLevel::Cheap) {
        Cost bound = (4 * state_.sys.delta + 1) * rec.radius;
        check(del.online_radius <= bound,
              "delivery bound: r_on=" + std::to_string(del.online_radius) + " > (4*delta+1)*rho=" +
                  std::to_string(bound) + " at request " + std::to_string(del.request_index));
    }

    // P_Hon(i) = P_H[q_on, r_i] + Base_H(i), with the same cycle-skip rule as
    // the offline base edges; duplicates are set-deduplicated.
    auto add_run = [&](Node lo, Node hi) {
        for (Node v = lo; v < hi; ++v) {
            GridEdge e = horizontal_edge(v, r.time);
            if (state_.edges.count(e)) continue;
            if (!forest_.connected(e.anchor, e.other())) add_edge(e, r.time);
        }
    };
    add_run(std::min(*q, r.node), std::max(*q, r.node));
    add_run(rec.base_lo, rec.base_hi);

    pvon_.push_back({std::min(*q, r.node), std::max(*q, r.node), del.request_index});
    pvon_.push_back({rec.base_lo, rec.base_hi, del.request_index});

    if (trace_) {
        (*trace_) << "{\"t\":" << r.time << ",\"phase\":\"deliver\",\"request\":[" << r.node
                  << "," << r.time << "],\"q_on\":" << *q << ",\"r_on\":" << del.online_radius
                  << "}\n";
    }
    state_.deliveries.push_back(del);
}

std::optional<Node> LineonEngine::select_store_candidate(const Interval& I, Time t) const {
    auto [nlo, nhi] = I.neighborhood();
    const Node mid2 = I.lo() + I.hi();  // compare |2v - mid2|
    std::optional<Node> best;
    auto consider = [&](Node v) {
        if (v < nlo || v > nhi) return;
        if (!best || std::llabs(2 * v - mid2) < std::llabs(2 * *best - mid2) ||
            (std::llabs(2 * v - mid2) == std::llabs(2 * *best - mid2) && v < *best))
            best = v;
    };
    Node mid = mid2 / 2;
    auto it = cache_.lower_bound(mid);
    if (it != cache_.end()) consider(*it);
    if (it != cache_.begin()) consider(*std::prev(it));
    auto lo_it = cache_.lower_bound(nlo);
    if (lo_it != cache_.end()) consider(*lo_it);
    auto hi_it = cache_.upper_bound(nhi);
    if (hi_it != cache_.begin()) consider(*std::prev(hi_it));
    for (const auto& [blo, bhi] : base_now_) {
        Node lo = std::max(blo, nlo), hi = std::min(bhi, nhi);
        if (lo > hi) continue;
        consider(std::clamp(mid, lo, hi));
        consider(std::clamp<Node>(mid + 1, lo, hi));
    }
    (void)t;
    return best;
}

void LineonEngine::full_asserts_pre_storage(Time t) const {
    // every active interval has a base replica or a cached copy nearby
    for (int l = 0; l <= state_.sys.levels; ++l) {
        Time window = Time{1} << l;
        for (const auto& [j, tb] : last_base_[l]) {
            if (tb < t - window) continue;  // not active
            Interval I{l, j, state_.sys.delta, state_.sys.padded_n};
            auto [nlo, nhi] = I.neighborhood();
            bool base_near = false;
            for (const auto& [blo, bhi] : base_now_)
                if (blo <= nhi && nlo <= bhi) base_near = true;
            bool cache_near = false;
            auto it = cache_.lower_bound(nlo);
            if (it != cache_.end() && *it <= nhi) cache_near = true;
            check(base_near || cache_near,
                  "active interval lacks a nearby base or cached copy: level " +
                      std::to_string(l) + " index " + std::to_string(j) + " at t=" +
                      std::to_string(t));
        }
    }
}

void LineonEngine::check_commit_overlap(Time t, std::size_t first_commit) const {
    // at most 3 same-time committed neighborhoods may cover any node
    std::vector<std::pair<Node, int>> events;
    for (std::size_t i = first_commit; i < state_.commits.size(); ++i) {
        auto [nlo, nhi] = state_.commits[i].interval.neighborhood();
        events.emplace_back(nlo, +1);
        events.emplace_back(nhi + 1, -1);
    }
    std::sort(events.begin(), events.end());
    int depth = 0;
    for (auto& [pos, d] : events) {
        depth += d;
        check(depth <= 3, "commit neighborhoods overlap more than 3 deep at t=" +
                              std::to_string(t));
    }
}

void LineonEngine::storage_phase(Time t) {
    if (level_ == AssertLevel::Full) full_asserts_pre_storage(t);

    std::size_t first_commit = state_.commits.size();
    std::set<Node> cnext{state_.inst.origin};
    add_edge(arc_edge(state_.inst.origin, t), t);

    for (int l = 0; l <= state_.sys.levels; ++l) {
        Time stay_window = (Time{1} << l) - 1;
        for (auto it_b = last_base_[l].begin(); it_b != last_base_[l].end();) {
            const auto [j, tb] = *it_b;
            if (tb < t - stay_window - 1) {  // not even active: done for good
                it_b = last_base_[l].erase(it_b);
                continue;
            }
            ++it_b;
            if (tb < t - stay_window) continue;  // active but not stay-active
            Interval I{l, j, state_.sys.delta, state_.sys.padded_n};
            auto [nlo, nhi] = I.neighborhood();
            auto it = cnext.lower_bound(nlo);
            if (it != cnext.end() && *it <= nhi) continue;  // S1 guard: copy already planned

            std::optional<Node> v = select_store_candidate(I, t);
            check(v.has_value(), "storage candidate missing: stay-active interval level " +
                                     std::to_string(l) + " index " + std::to_string(j) +
                                     " has no storage candidate at t=" + std::to_string(t));
            state_.commits.push_back({I, t, {*v, t + 1}});
            cnext.insert(*v);
            add_edge(arc_edge(*v, t), t);
        }
    }

    if (level_ == AssertLevel::Full) check_commit_overlap(t, first_commit);

    if (trace_) {
        (*trace_) << "{\"t\":" << t << ",\"phase\":\"store\",\"commits\":[";
        for (std::size_t i = first_commit; i < state_.commits.size(); ++i) {
            if (i > first_commit) (*trace_) << ",";
            const CommitRecord& c = state_.commits[i];
            (*trace_) << "{\"level\":" << c.interval.level << ",\"index\":" << c.interval.index
                      << ",\"node\":" << c.stored.node << "}";
        }
        (*trace_) << "]}\n";
    }

    cache_ = std::move(cnext);
    state_.cache_history.emplace_back(cache_.begin(), cache_.end());
    base_now_.clear();
    pvon_.clear();
}

void LineonEngine::advance_to(Time t) {
    while (current_time_ < t) {
        storage_phase(current_time_);
        ++current_time_;
    }
}

void LineonEngine::add_request(Replica r) {
    if (r.node < 1 || r.node > state_.inst.n || r.time < 0)
        throw std::invalid_argument("lineon: request out of grid");
    if (r.time < current_time_)
        throw std::invalid_argument("lineon: request arrived in the past");
    advance_to(r.time);
    state_.inst.requests.push_back(r);
    deliver(r);
}

std::span<const std::pair<Time, GridEdge>> LineonEngine::edges_since(std::size_t cursor) const {
    return {state_.event_log.data() + cursor, state_.event_log.size() - cursor};
}

std::vector<Node> LineonEngine::current_cache() const {
    return {cache_.begin(), cache_.end()};
}

void LineonEngine::finish() {
    if (finished_) return;
    finished_ = true;
    state_.triangle = triangle_->trace();
    if (level_ == AssertLevel::Off) return;

    // arc accounting vs. commits
    Cost commit_arcs = state_.arc_cost - state_.root_arc_cost;
    check(commit_arcs <= static_cast<Cost>(state_.commits.size()),
          "arc bound: non-root arcs exceed |COMMIT|");
    state_.arcs_equal_commits =
        commit_arcs == static_cast<Cost>(state_.commits.size());

    // delivery corollary
    Cost radius_sum = 0, mixed_sum = 0;
    for (std::size_t i = 0; i < state_.deliveries.size(); ++i) {
        radius_sum += state_.triangle.per_request[i].radius;
        mixed_sum += state_.deliveries[i].online_radius + 2 * state_.triangle.per_request[i].radius;
    }
    check(state_.horizontal_cost <= mixed_sum,
          "delivery corollary: |H_on| > sum(r_on + 2*rho)");
    check(mixed_sum <= (4 * state_.sys.delta + 3) * radius_sum,
          "delivery corollary: sum(r_on + 2*rho) > (4*delta+3)*sum(rho)");

    // commit charging bound
    double log_n = std::log2(static_cast<double>(state_.sys.padded_n));
    double rhs = 3.0 * static_cast<double>(state_.triangle.arc_cost) +
                 (6.0 * log_n / static_cast<double>(state_.sys.delta)) *
                     static_cast<double>(state_.triangle.horizontal_cost) +
                 static_cast<double>(state_.triangle.base_size());
    check(static_cast<double>(state_.commits.size()) <= rhs + 1e-9,
          "commit charging bound: |COMMIT| > 3|A|+6log(n)/delta*|H|+|Base|");

    // sampled cache-coverage checks (a copy stays within 4*delta*rho of any
    // base replica, rho steps later)
    Time t_last = static_cast<Time>(state_.cache_history.size()) - 1;
    if (t_last > 0 && !state_.triangle.base_ranges.empty()) {
        std::vector<std::pair<Time, std::pair<Node, Node>>> flat;
        for (const auto& [bt, ranges] : state_.triangle.base_ranges)
            for (const auto& rg : ranges) flat.emplace_back(bt, rg);
        std::mt19937_64 rng(0x6d63646cULL);
        int samples = level_ == AssertLevel::Full ? 512 : 64;
        for (int s = 0; s < samples; ++s) {
            const auto& [bt, rg] = flat[rng() % flat.size()];
            if (bt >= t_last) continue;
            Node v = rg.first + static_cast<Node>(rng() % (rg.second - rg.first + 1));
            Time rho = 1 + static_cast<Time>(rng() % (t_last - bt));
            const std::vector<Node>& cache = state_.cache_history[bt + rho];
            Cost nearest = -1;
            auto it = std::lower_bound(cache.begin(), cache.end(), v);
            if (it != cache.end()) nearest = std::llabs(*it - v);
            if (it != cache.begin()) {
                Cost d = std::llabs(*std::prev(it) - v);
                if (nearest < 0 || d < nearest) nearest = d;
            }
            check(nearest >= 0 && nearest <= 4 * state_.sys.delta * rho,
                  "cache coverage: no copy within 4*delta*rho of base replica (v=" +
                      std::to_string(v) + ", t=" + std::to_string(bt) + ", rho=" +
                      std::to_string(rho) + ")");
        }
    }
}

LineonResult run_lineon(const Instance& inst, std::optional<std::int64_t> delta,
                        AssertLevel level, std::ostream* trace) {
    inst.validate();
    LineonEngine engine(inst.n, inst.origin, delta, level, trace);
    for (const Replica& r : inst.requests) engine.add_request(r);
    engine.finish();
    LineonResult res{engine.state(), {}};
    res.report = check_solution(inst, res.state.edges);
    return res;
}

CausalityAudit audit_causality(std::span<const std::pair<Time, GridEdge>> event_log) {
    for (const auto& [when, edge] : event_log) {
        if (edge.anchor.time != when) return {false, std::make_pair(when, edge)};
    }
    return {};
}

CompetitiveReport competitive_report(const Instance& inst, std::optional<std::int64_t> delta,
                                     AssertLevel level) {
    LineonResult on = run_lineon(inst, delta, level);
    CompetitiveReport rep;
    rep.cost_lineon = on.state.total_cost();
    rep.cost_triangle = on.state.triangle.total_cost();
    rep.sum_radii = sum_radii(on.state.triangle);
    rep.delta_used = on.state.sys.delta;
    rep.padded_n = on.state.sys.padded_n;
    rep.bound_rhs = 8.0 + std::sqrt(10.0 * std::log2(static_cast<double>(rep.padded_n)));

    auto ratio = [](Cost num, Cost den) {
        if (den == 0) return num == 0 ? 1.0 : std::numeric_limits<double>::infinity();
        return static_cast<double>(num) / static_cast<double>(den);
    };
    rep.ratio_vs_triangle = ratio(rep.cost_lineon, rep.cost_triangle);
    rep.ratio_vs_sum_radii = ratio(rep.cost_lineon, rep.sum_radii);
    rep.bound_satisfied = static_cast<double>(rep.cost_lineon) <=
                          rep.bound_rhs * static_cast<double>(rep.cost_triangle) + 1e-9;
    if (rep.cost_lineon == 0) rep.bound_satisfied = true;

    try {
        SolutionReport opt = exact_opt(inst);
        rep.cost_exact = opt.total_cost;
        rep.cost_exact_with_root = opt_with_root(inst, opt);
        rep.ratio_vs_exact = ratio(rep.cost_lineon, opt.total_cost);
    } catch (const instance_too_large&) {
        rep.ratio_vs_exact = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

}  // namespace mcd
