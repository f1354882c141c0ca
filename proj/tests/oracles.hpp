#pragma once

#include <cstdint>
#include <vector>

#include "mcdline/grid.hpp"

namespace mcd::testing {

// Independent optimum for micro instances (n <= 4, horizon <= 3, N <= 3) by
// brute force: a y-monotone witness path is an ascent-column tuple, every
// feasible solution contains one witness per request, and the union of any
// witness choice is itself feasible. So OPT = min over witness combinations
// of the union size. Edge sets fit in a 64-bit mask at this scale.
Cost brute_force_opt(const Instance& inst);

// All witness-path edge masks for one origin/request pair, deduplicated and
// reduced to the antichain of set-minimal masks.
// t_max fixes the shared bit layout (the instance horizon).
std::vector<std::uint64_t> witness_masks(Node n, Node origin, Replica request, Time t_max);

}  // namespace mcd::testing
