#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace mcd {

// Minimum-cost directed Steiner arborescence by subset dynamic programming
// (Dreyfus-Wagner style): dp[S][v] = cheapest arborescence rooted at v
// spanning terminal subset S. Exponential in the number of terminals, so
// callers guard instance size. Weights W are int64 or double.
//
// Directed edges carry a caller-supplied payload id; anti-parallel edges may
// share a payload (an undirected edge bought once), and the reconstruction
// deduplicates payloads.
template <typename W>
class SteinerArborescenceSolver {
public:
    explicit SteinerArborescenceSolver(int vertex_count) : in_edges_(vertex_count) {}

    void add_edge(int from, int to, W weight, int payload) {
        in_edges_[to].push_back({from, weight, payload});
    }

    struct Result {
        W cost;
        std::vector<int> payloads;  // deduplicated bought-edge ids
    };

    Result solve(int root, const std::vector<int>& terminals) {
        const int k = static_cast<int>(terminals.size());
        if (k > 20) throw std::invalid_argument("steiner: too many terminals");
        const int V = static_cast<int>(in_edges_.size());
        if (k == 0) return {W{0}, {}};
        const std::size_t masks = std::size_t{1} << k;
        const W inf = std::numeric_limits<W>::max() / 4;

        dp_.assign(masks, std::vector<W>(V, inf));
        prov_.assign(masks, std::vector<Prov>(V));

        for (int i = 0; i < k; ++i) {
            std::size_t m = std::size_t{1} << i;
            dp_[m][terminals[i]] = W{0};
            relax(m, V, inf);
        }
        for (std::size_t mask = 1; mask < masks; ++mask) {
            if ((mask & (mask - 1)) == 0) continue;  // singletons done
            auto& row = dp_[mask];
            for (std::size_t sub = (mask - 1) & mask; sub > (mask ^ sub);
                 sub = (sub - 1) & mask) {
                const auto& a = dp_[sub];
                const auto& b = dp_[mask ^ sub];
                for (int v = 0; v < V; ++v) {
                    if (a[v] >= inf || b[v] >= inf) continue;
                    W c = a[v] + b[v];
                    if (c < row[v]) {
                        row[v] = c;
                        prov_[mask][v] = {Prov::Merge, static_cast<std::int64_t>(sub), 0};
                    }
                }
            }
            relax(mask, V, inf);
        }

        Result res;
        res.cost = dp_[masks - 1][root];
        if (res.cost >= inf) throw std::runtime_error("steiner: terminal unreachable from root");
        std::vector<char> have;
        std::vector<std::pair<std::size_t, int>> stack{{masks - 1, root}};
        while (!stack.empty()) {
            auto [mask, v] = stack.back();
            stack.pop_back();
            const Prov& p = prov_[mask][v];
            if (p.kind == Prov::Merge) {
                stack.push_back({static_cast<std::size_t>(p.a), v});
                stack.push_back({mask ^ static_cast<std::size_t>(p.a), v});
            } else if (p.kind == Prov::Extend) {
                int payload = p.payload;
                if (payload >= static_cast<int>(have.size())) have.resize(payload + 1, 0);
                if (!have[payload]) {
                    have[payload] = 1;
                    res.payloads.push_back(payload);
                }
                stack.push_back({mask, static_cast<int>(p.a)});
            }
            // Prov::Leaf: dp == 0 at a terminal, nothing to emit
        }
        return res;
    }

private:
    struct InEdge {
        int from;
        W weight;
        int payload;
    };
    struct Prov {
        enum Kind : std::uint8_t { Leaf, Merge, Extend } kind = Leaf;
        std::int64_t a = 0;  // Merge: subset; Extend: successor vertex
        int payload = 0;
    };

    // Multi-source Dijkstra seeding from dp_[mask]: dp[mask][v] can improve
    // via an edge v->u to dp[mask][u] + w(v->u).
    void relax(std::size_t mask, int V, W inf) {
        using Entry = std::pair<W, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        auto& row = dp_[mask];
        for (int v = 0; v < V; ++v)
            if (row[v] < inf) heap.push({row[v], v});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > row[u]) continue;
            for (const InEdge& e : in_edges_[u]) {
                W nd = d + e.weight;
                if (nd < row[e.from]) {
                    row[e.from] = nd;
                    prov_[mask][e.from] = {Prov::Extend, u, e.payload};
                    heap.push({nd, e.from});
                }
            }
        }
    }

    std::vector<std::vector<InEdge>> in_edges_;
    std::vector<std::vector<W>> dp_;
    std::vector<std::vector<Prov>> prov_;
};

}  // namespace mcd
