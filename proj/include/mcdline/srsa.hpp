#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcdline/online.hpp"

namespace mcd {

// A terminal in the positive quadrant. Streams are y-sorted.
struct Point {
    double x = 0.0;
    double y = 0.0;
    auto operator<=>(const Point&) const = default;
};

enum class Orientation : std::uint8_t { Horizontal, Vertical };

// Axis-parallel segment from (x0,y0): horizontal toward +x, vertical toward
// +y. Vertical segments are one-way upward; horizontal segments are not.
struct Segment {
    Orientation orientation = Orientation::Horizontal;
    double x0 = 0.0;
    double y0 = 0.0;
    double length = 0.0;
    double x1() const { return orientation == Orientation::Horizontal ? x0 + length : x0; }
    double y1() const { return orientation == Orientation::Vertical ? y0 + length : y0; }
};

double segments_cost(std::span<const Segment> segments);

// y-monotone reachability from (root_x, 0) through the segment set. A
// vertical segment can be entered at any covered height and left at any
// height at or above the entry; horizontal segments are free both ways.
struct ContinuousReport {
    bool feasible = false;
    double total_cost = 0.0;
    std::optional<std::size_t> first_unreachable;
};
ContinuousReport check_segments(std::span<const Point> points, std::span<const Segment> segments,
                                double root_x = 0.0);

// Guess-doubling state for the online continuous algorithm: a grid with
// n_guess nodes spans [0, M_guess] and one embedded discrete run per phase.
struct PhaseRecord {
    std::int64_t n_guess = 4;
    double m_guess = 1.0;
    double y_base = 0.0;
    std::size_t first_point = 0;
    double cost = 0.0;  // segments charged to this phase, stitch included
};

struct OnRsaResult {
    std::vector<Segment> segments;
    double cost = 0.0;
    std::vector<PhaseRecord> phases;
    ContinuousReport report;
};

// Online: points must have non-decreasing y. root_x generalizes the root
// (0,0) so the discrete translation can root at the instance origin. The
// guess grid squares on rescale, so streams long enough to push it past
// kOnRsaMaxGuess nodes (17+ points) throw instance_too_large.
inline constexpr std::int64_t kOnRsaMaxGuess = std::int64_t{1} << 20;
OnRsaResult run_onrsa(std::span<const Point> points, AssertLevel level = AssertLevel::Cheap,
                      double root_x = 0.0);

// Exact continuous oracle on the Hanan grid of the terminals plus the root;
// subset dynamic programming, so guarded by terminal count.
inline constexpr std::size_t kSrsaExactMaxPoints = 8;
double srsa_exact(std::span<const Point> points, double root_x = 0.0);

// Nearest-column discretization of a continuous solution (ties to the lower
// node); touching segments get their snapped images joined by short L-paths.
std::set<GridEdge> snap_to_grid(std::span<const Segment> segments, const Instance& inst);

// Few-request algorithm: embed requests as points, run the continuous
// algorithm, snap back, repair to feasibility, and keep the cheaper of the
// snapped and the plain discrete run. Past kLineonpSnapMaxRequests the
// continuous detour is skipped and the plain run is returned as is.
inline constexpr std::size_t kLineonpSnapMaxRequests = 16;
struct LineonpResult {
    SolutionReport report;
    Cost cost_snapped = 0;
    Cost cost_plain = 0;
    bool used_snapped = false;
    TriangleTrace triangle;  // shared radius bookkeeping for ratio reports
};
LineonpResult run_lineonp(const Instance& inst, AssertLevel level = AssertLevel::Cheap);

}  // namespace mcd
