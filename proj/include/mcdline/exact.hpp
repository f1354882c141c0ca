#pragma once

#include "mcdline/offline.hpp"

namespace mcd {

// Resource guards for the exact solver.
inline constexpr std::size_t kExactMaxRequests = 10;
inline constexpr std::int64_t kExactMaxCells = 4096;  // n*(t_N+1)

// Minimum-cardinality edge set spanning all requests from (origin,0).
// Throws instance_too_large when the guards are exceeded. Ties between
// optimal edge sets are broken arbitrarily; the cost is unique.
SolutionReport exact_opt(const Instance& inst);

// Secondary statistic: the optimal cost adjusted as if a copy had to stay
// alive on the origin column until the last request time.
Cost opt_with_root(const Instance& inst, const SolutionReport& opt);

}  // namespace mcd
