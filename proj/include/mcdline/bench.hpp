#pragma once

#include "mcdline/generators.hpp"
#include "mcdline/online.hpp"

namespace mcd {

struct BenchRow {
    std::string family;
    Node n = 0;
    std::size_t requests = 0;
    std::uint64_t seed = 0;
    std::int64_t delta = 0;
    Cost cost_lineon = 0;
    Cost cost_triangle = 0;
    Cost sum_radii = 0;
    std::optional<Cost> cost_exact;
    double ratio_vs_triangle = 0.0;
    double ratio_vs_sum_radii = 0.0;
    double bound_rhs = 0.0;
    bool bound_satisfied = false;
    std::string error;  // non-empty when the row failed; the run continues
};

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root mean square
};
RegressionFit fit_line(std::span<const std::pair<double, double>> pts);

struct BenchReport {
    std::vector<BenchRow> rows;
    double max_ratio = 0.0;  // max ratio_vs_triangle over successful rows
    // per-n max ratio regressed against sqrt(log2 n) and against log2 n
    RegressionFit fit_vs_sqrt_log;
    RegressionFit fit_vs_log;
};

// Rows run in parallel (`jobs` threads) but land in suite order, so the
// emitted CSV is byte-identical across reruns and thread counts.
BenchReport run_bench(std::span<const GenSpec> suite, int jobs = 1,
                      AssertLevel level = AssertLevel::Cheap,
                      std::optional<std::int64_t> delta = std::nullopt);

std::string bench_to_csv(const BenchReport& report);
std::string bench_to_json(const BenchReport& report);

}  // namespace mcd
