#include <doctest.h>

#include <random>

#include "mcdline/exact.hpp"
#include "mcdline/generators.hpp"
#include "mcdline/offline.hpp"

using namespace mcd;

TEST_CASE("single far request: radius, base, cost") {
    Instance inst{8, 1, {{4, 2}}};
    TriangleTrace trace = run_triangle(inst);
    REQUIRE(trace.per_request.size() == 1);
    const TriangleRequestRecord& rec = trace.per_request[0];
    CHECK(rec.serving == Replica{1, 0});
    CHECK(rec.radius == 5);
    CHECK(rec.base_lo == 1);  // nodes within 5 of node 4, clipped to [1,8]
    CHECK(rec.base_hi == 8);
    CHECK(trace.arc_cost == 2);  // arcs (1,0) and (1,1)
    CHECK(trace.horizontal_cost == 7);
    CHECK(rec.edges_added == 9);
    CHECK(rec.edges_added <= 3 * rec.radius);
    CHECK(sum_radii(trace) == 5);
    CHECK(check_solution(inst, trace.edges).feasible);
}

TEST_CASE("request at the origin replica is free") {
    Instance inst{8, 1, {{1, 0}}};
    TriangleTrace trace = run_triangle(inst);
    CHECK(trace.per_request[0].radius == 0);
    CHECK(trace.total_cost() == 0);
    CHECK(trace.base_size() == 1);
    CHECK(sum_radii(trace) == 0);
}

TEST_CASE("same-time second request and the circle rule") {
    Instance inst{8, 1, {{1, 0}, {3, 0}}};
    TriangleTrace trace = run_triangle(inst);
    const TriangleRequestRecord& rec = trace.per_request[1];
    CHECK(rec.radius == 2);
    CHECK(rec.base_lo == 1);
    CHECK(rec.base_hi == 5);
    CHECK(trace.arc_cost == 0);
    CHECK(trace.horizontal_cost == 4);  // base edges 1..5; no duplicates, no cycles
    CHECK(check_solution(inst, trace.edges).feasible);
}

TEST_CASE("triangle tie-breaking prefers smaller node then time") {
    // two solution replicas equidistant from the request
    Instance inst{9, 5, {{3, 1}, {7, 1}, {5, 2}}};
    TriangleTrace trace = run_triangle(inst);
    CHECK(trace.per_request[2].serving.node <= 5);
}

TEST_CASE("triangle output is an arborescence") {
    std::mt19937_64 seeds(11);
    for (int it = 0; it < 50; ++it) {
        GenSpec spec;
        spec.family = Family::Uniform;
        spec.n = 32;
        spec.requests = 12;
        spec.t_max = 20;
        spec.seed = seeds();
        Instance inst = generate(spec);
        TriangleTrace trace = run_triangle(inst);
        CHECK(check_solution(inst, trace.edges).feasible);
        // acyclic: |edges| = |vertices| - #components over the edge set
        std::map<Replica, int> id;
        auto intern = [&](Replica r) {
            return id.emplace(r, static_cast<int>(id.size())).first->second;
        };
        ReplicaForest forest;
        std::size_t links = 0;
        for (const GridEdge& e : trace.edges) {
            intern(e.anchor);
            intern(e.other());
            if (forest.link(e.anchor, e.other())) ++links;
        }
        CHECK(links == trace.edges.size());  // every edge joined two components
        // connected and rooted: all replicas reach (origin, 0)'s component
        bool all_connected = true;
        for (auto& [r, unused] : id)
            all_connected = all_connected && forest.connected(r, {inst.origin, 0});
        if (!trace.edges.empty()) CHECK(all_connected);
        // per-request added cost within 3 rho
        for (const TriangleRequestRecord& rec : trace.per_request)
            CHECK(rec.edges_added <= 3 * rec.radius);
    }
}

TEST_CASE("check_solution reports failures with witnesses") {
    Instance inst{4, 1, {{1, 1}}};
    SUBCASE("empty set, request needs an arc") {
        SolutionReport rep = check_solution(inst, std::set<GridEdge>{});
        CHECK_FALSE(rep.feasible);
        CHECK(rep.first_unreachable == 0);
    }
    SUBCASE("the arc fixes it") {
        SolutionReport rep = check_solution(inst, std::set<GridEdge>{arc_edge(1, 0)});
        CHECK(rep.feasible);
        REQUIRE(rep.witnesses.size() == 1);
        CHECK(rep.witnesses[0].front() == Replica{1, 0});
        CHECK(rep.witnesses[0].back() == Replica{1, 1});
    }
    SUBCASE("request at origin needs nothing") {
        Instance at_root{4, 2, {{2, 0}}};
        CHECK(check_solution(at_root, std::set<GridEdge>{}).feasible);
    }
}

TEST_CASE("witness paths are y-monotone and inside the solution") {
    GenSpec spec;
    spec.family = Family::Clustered;
    spec.n = 24;
    spec.requests = 10;
    spec.t_max = 15;
    spec.seed = 5;
    Instance inst = generate(spec);
    TriangleTrace trace = run_triangle(inst);
    SolutionReport rep = check_solution(inst, trace.edges);
    REQUIRE(rep.feasible);
    for (std::size_t i = 0; i < inst.requests.size(); ++i) {
        const auto& w = rep.witnesses[i];
        REQUIRE(!w.empty());
        CHECK(w.front() == Replica{inst.origin, 0});
        CHECK(w.back() == inst.requests[i]);
        for (std::size_t k = 1; k < w.size(); ++k) {
            Replica a = w[k - 1], b = w[k];
            CHECK(b.time >= a.time);
            bool arc = a.node == b.node && b.time == a.time + 1;
            bool hor = a.time == b.time && std::abs(a.node - b.node) == 1;
            CHECK((arc || hor));
            GridEdge e = arc ? arc_edge(a.node, a.time)
                             : horizontal_edge(std::min(a.node, b.node), a.time);
            CHECK(trace.edges.count(e) == 1);
        }
    }
}

TEST_CASE("replica forest") {
    ReplicaForest f;
    CHECK_FALSE(f.connected({1, 0}, {2, 0}));
    CHECK(f.link({1, 0}, {2, 0}));
    CHECK(f.link({2, 0}, {3, 0}));
    CHECK_FALSE(f.link({1, 0}, {3, 0}));  // would close a cycle
    CHECK(f.connected({1, 0}, {3, 0}));
}
