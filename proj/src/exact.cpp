#include "mcdline/exact.hpp"

#include <algorithm>
#include <string>

#include "mcdline/errors.hpp"
#include "mcdline/steiner_dw.hpp"

namespace mcd {

namespace {
int vertex_id(Node n, Replica r) {
    return static_cast<int>(r.time * n + (r.node - 1));
}
}  // namespace

SolutionReport exact_opt(const Instance& inst) {
    inst.validate();
    Time t_max = inst.horizon();
    std::int64_t cells = inst.n * (t_max + 1);
    if (inst.requests.size() > kExactMaxRequests)
        throw instance_too_large("exact_opt: more than " + std::to_string(kExactMaxRequests) +
                                 " requests");
    if (cells > kExactMaxCells)
        throw instance_too_large("exact_opt: grid has " + std::to_string(cells) +
                                 " cells, guard is " + std::to_string(kExactMaxCells));

    // Bidirected grid: each horizontal edge contributes two unit anti-parallel
    // moves sharing one payload, each arc one upward move.
    std::vector<GridEdge> payload;
    SteinerArborescenceSolver<Cost> solver(static_cast<int>(cells));
    for (Time t = 0; t <= t_max; ++t) {
        for (Node v = 1; v < inst.n; ++v) {
            int id = static_cast<int>(payload.size());
            payload.push_back(horizontal_edge(v, t));
            int a = vertex_id(inst.n, {v, t}), b = vertex_id(inst.n, {v + 1, t});
            solver.add_edge(a, b, 1, id);
            solver.add_edge(b, a, 1, id);
        }
        if (t < t_max) {
            for (Node v = 1; v <= inst.n; ++v) {
                int id = static_cast<int>(payload.size());
                payload.push_back(arc_edge(v, t));
                solver.add_edge(vertex_id(inst.n, {v, t}), vertex_id(inst.n, {v, t + 1}), 1, id);
            }
        }
    }

    std::vector<int> terminals;
    terminals.reserve(inst.requests.size());
    for (const Replica& r : inst.requests) terminals.push_back(vertex_id(inst.n, r));
    auto res = solver.solve(vertex_id(inst.n, {inst.origin, 0}), terminals);

    std::set<GridEdge> edges;
    for (int id : res.payloads) edges.insert(payload[id]);
    SolutionReport rep = check_solution(inst, edges);
    return rep;
}

Cost opt_with_root(const Instance& inst, const SolutionReport& opt) {
    Time t_max = inst.horizon();
    Cost root_arcs = 0;
    for (const GridEdge& e : opt.edges)
        if (e.kind == EdgeKind::Arc && e.anchor.node == inst.origin && e.anchor.time < t_max)
            ++root_arcs;
    return opt.total_cost + std::max<Cost>(0, t_max - root_arcs);
}

}  // namespace mcd
