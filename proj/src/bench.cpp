#include "mcdline/bench.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace mcd {

RegressionFit fit_line(std::span<const std::pair<double, double>> pts) {
    RegressionFit fit;
    const double n = static_cast<double>(pts.size());
    if (pts.empty()) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    fit.slope = std::abs(denom) < 1e-12 ? 0.0 : (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (auto& [x, y] : pts) {
        double r = y - (fit.slope * x + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

BenchReport run_bench(std::span<const GenSpec> suite, int jobs, AssertLevel level,
                      std::optional<std::int64_t> delta) {
    BenchReport report;
    report.rows.resize(suite.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= suite.size()) return;
            const GenSpec& spec = suite[i];
            BenchRow& row = report.rows[i];
            row.family = family_name(spec.family);
            row.n = spec.n;
            row.seed = spec.seed;
            try {
                Instance inst = generate(spec);
                row.requests = inst.requests.size();
                CompetitiveReport rep = competitive_report(inst, delta, level);
                row.delta = rep.delta_used;
                row.cost_lineon = rep.cost_lineon;
                row.cost_triangle = rep.cost_triangle;
                row.sum_radii = rep.sum_radii;
                row.cost_exact = rep.cost_exact;
                row.ratio_vs_triangle = rep.ratio_vs_triangle;
                row.ratio_vs_sum_radii = rep.ratio_vs_sum_radii;
                row.bound_rhs = rep.bound_rhs;
                row.bound_satisfied = rep.bound_satisfied;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::map<Node, double> max_by_n;
    for (const BenchRow& row : report.rows) {
        if (!row.error.empty() || !std::isfinite(row.ratio_vs_triangle)) continue;
        report.max_ratio = std::max(report.max_ratio, row.ratio_vs_triangle);
        auto [it, fresh] = max_by_n.try_emplace(row.n, row.ratio_vs_triangle);
        if (!fresh) it->second = std::max(it->second, row.ratio_vs_triangle);
    }
    std::vector<std::pair<double, double>> vs_sqrt, vs_log;
    for (auto& [n, r] : max_by_n) {
        double l = std::log2(static_cast<double>(n));
        vs_sqrt.emplace_back(std::sqrt(l), r);
        vs_log.emplace_back(l, r);
    }
    report.fit_vs_sqrt_log = fit_line(vs_sqrt);
    report.fit_vs_log = fit_line(vs_log);
    return report;
}

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
}  // namespace

std::string bench_to_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "schema,family,n,requests,seed,delta,cost_lineon,cost_triangle,sum_radii,"
           "cost_exact,ratio_vs_triangle,ratio_vs_sum_radii,bound_rhs,bound_satisfied,error\n";
    for (const BenchRow& r : report.rows) {
        out << "1," << r.family << ',' << r.n << ',' << r.requests << ',' << r.seed << ','
            << r.delta << ',' << r.cost_lineon << ',' << r.cost_triangle << ',' << r.sum_radii
            << ',';
        if (r.cost_exact) out << *r.cost_exact;
        out << ',' << fmt(r.ratio_vs_triangle) << ',' << fmt(r.ratio_vs_sum_radii) << ','
            << fmt(r.bound_rhs) << ',' << (r.bound_satisfied ? 1 : 0) << ',' << r.error << "\n";
    }
    return out.str();
}

std::string bench_to_json(const BenchReport& report) {
    using nlohmann::json;
    json rows = json::array();
    for (const BenchRow& r : report.rows) {
        json j{{"family", r.family},
               {"n", r.n},
               {"requests", r.requests},
               {"seed", r.seed},
               {"delta", r.delta},
               {"cost_lineon", r.cost_lineon},
               {"cost_triangle", r.cost_triangle},
               {"sum_radii", r.sum_radii},
               {"ratio_vs_triangle", r.ratio_vs_triangle},
               {"ratio_vs_sum_radii", r.ratio_vs_sum_radii},
               {"bound_rhs", r.bound_rhs},
               {"bound_satisfied", r.bound_satisfied}};
        if (r.cost_exact) j["cost_exact"] = *r.cost_exact;
        if (!r.error.empty()) j["error"] = r.error;
        rows.push_back(j);
    }
    auto fit_json = [](const RegressionFit& f) {
        return json{{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
    };
    // "log" always means log2; bound formulas use the padded line size
    return json{{"schema", 1},
                {"log_base", 2},
                {"rows", rows},
                {"max_ratio", report.max_ratio},
                {"fit_vs_sqrt_log", fit_json(report.fit_vs_sqrt_log)},
                {"fit_vs_log", fit_json(report.fit_vs_log)}}
        .dump(2);
}

}  // namespace mcd
