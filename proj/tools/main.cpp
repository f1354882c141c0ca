#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcdline/bench.hpp"
#include "mcdline/errors.hpp"
#include "mcdline/exact.hpp"
#include "mcdline/io.hpp"

using namespace mcd;

namespace {

// exit codes: 0 ok, 1 infeasible, 2 parse error, 3 resource guard, 4
// violated runtime invariant
enum ExitCode { kOk = 0, kInfeasible = 1, kParse = 2, kGuard = 3, kAssert = 4 };

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.ends_with('\n')) std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << text;
}

AssertLevel parse_level(const std::string& s) {
    if (s == "off") return AssertLevel::Off;
    if (s == "cheap") return AssertLevel::Cheap;
    if (s == "full") return AssertLevel::Full;
    throw CLI::ValidationError("--assert-level", "must be off, cheap or full");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mcdline: grid content-delivery algorithms and benchmarks"};
    app.require_subcommand(1);

    std::string family = "uniform", input = "-", output, solution_path, report_path;
    std::string algorithm = "lineon", level_str = "cheap", format = "json", trace_path;
    std::string bench_path, instance_path;
    std::int64_t n = 64, t_max = 64, delta_flag = 0;
    std::size_t requests = 16;
    std::uint64_t seed = 0;
    std::size_t seeds = 1;
    int jobs = 1, cascade_depth = 0;
    double scale = 1.0;
    bool points_mode = false;
    std::vector<std::string> families;
    std::vector<std::int64_t> n_values;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--delta", delta_flag, "interval granularity; 0 = auto");
        cmd->add_option("--assert-level", level_str, "off, cheap or full")
            ->check(CLI::IsMember({"off", "cheap", "full"}));
    };

    CLI::App* gen = app.add_subcommand("gen", "generate an instance or point stream");
    gen->add_option("--family", family, "uniform, clustered, staircase or cascade");
    gen->add_option("--n", n, "line size");
    gen->add_option("--requests", requests, "request count");
    gen->add_option("--t-max", t_max, "time horizon");
    gen->add_option("--seed", seed, "PRNG seed");
    gen->add_option("--cascade-depth", cascade_depth, "cascade recursion depth; 0 = log2 n");
    gen->add_option("--scale", scale, "coordinate scale for point streams");
    gen->add_flag("--points", points_mode, "emit a continuous point stream");
    gen->add_option("-o,--output", output, "output path; - = stdout");

    CLI::App* run = app.add_subcommand("run", "run an algorithm on an instance");
    run->add_option("algorithm", algorithm, "triangle, lineon, lineonp, onrsa or exact")
        ->check(CLI::IsMember({"triangle", "lineon", "lineonp", "onrsa", "exact"}));
    run->add_option("-i,--input", input, "instance JSON (points JSONL for onrsa); - = stdin");
    run->add_option("-o,--output", output, "solution (segments for onrsa) output path");
    run->add_option("--report", report_path, "report JSON output path");
    run->add_option("--trace", trace_path, "JSONL event trace (lineon only)");
    add_common(run);

    CLI::App* check = app.add_subcommand("check", "check a solution against an instance");
    check->add_option("-i,--input", input, "instance JSON");
    check->add_option("-s,--solution", solution_path, "solution JSON")->required();
    check->add_option("-o,--output", output, "report output path");

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("--family", families, "families to run (repeatable)");
    bench->add_option("--n", n_values, "line sizes to run (repeatable)");
    bench->add_option("--requests", requests, "requests per instance");
    bench->add_option("--t-max", t_max, "time horizon; 0 = 2n");
    bench->add_option("--seeds", seeds, "seeds per (family, n) cell");
    bench->add_option("--seed", seed, "base seed");
    bench->add_option("--jobs", jobs, "worker threads");
    bench->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    bench->add_option("-o,--output", output, "output path");
    add_common(bench);

    CLI::App* report = app.add_subcommand("report", "re-emit a bench report or draw a solution");
    report->add_option("--bench", bench_path, "bench JSON produced by `bench --format json`");
    report->add_option("--instance", instance_path, "instance JSON (with --solution, for svg)");
    report->add_option("-s,--solution", solution_path, "solution JSON");
    report->add_option("--format", format, "json, csv or svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    report->add_option("-o,--output", output, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        AssertLevel level = parse_level(level_str);
        std::optional<std::int64_t> delta =
            delta_flag > 0 ? std::optional<std::int64_t>(delta_flag) : std::nullopt;

        if (*gen) {
            GenSpec spec;
            spec.family = parse_family(family);
            spec.n = n;
            spec.requests = requests;
            spec.t_max = t_max;
            spec.seed = seed;
            spec.cascade_depth = cascade_depth;
            spec.scale = scale;
            if (points_mode) {
                std::ostringstream ss;
                write_points(ss, generate_points(spec));
                emit(output, ss.str());
            } else {
                emit(output, instance_to_json(generate(spec)));
            }
            return kOk;
        }

        if (*run) {
            if (algorithm == "onrsa") {
                std::istringstream in(slurp(input));
                std::vector<Point> points = parse_points(in);
                OnRsaResult res = run_onrsa(points, level);
                emit(output, segments_to_json(res.segments));
                return res.report.feasible ? kOk : kInfeasible;
            }
            Instance inst = parse_instance(slurp(input));
            SolutionReport rep;
            if (algorithm == "triangle") {
                TriangleTrace trace = run_triangle(inst);
                rep = check_solution(inst, trace.edges);
            } else if (algorithm == "lineon") {
                std::ofstream trace_out;
                std::ostream* trace = nullptr;
                if (!trace_path.empty()) {
                    trace_out.open(trace_path);
                    if (!trace_out)
                        throw std::invalid_argument("cannot open " + trace_path + " for writing");
                    trace = &trace_out;
                }
                rep = run_lineon(inst, delta, level, trace).report;
            } else if (algorithm == "lineonp") {
                rep = run_lineonp(inst, level).report;
            } else {
                rep = exact_opt(inst);
            }
            emit(output, solution_to_json(rep.edges));
            if (!report_path.empty()) emit(report_path, report_to_json(rep));
            return rep.feasible ? kOk : kInfeasible;
        }

        if (*check) {
            Instance inst = parse_instance(slurp(input));
            SolutionReport rep = check_solution(inst, parse_solution(slurp(solution_path)));
            emit(output, report_to_json(rep));
            return rep.feasible ? kOk : kInfeasible;
        }

        if (*bench) {
            if (families.empty()) families = {"uniform"};
            if (n_values.empty()) n_values = {64};
            std::vector<GenSpec> suite;
            for (const std::string& f : families)
                for (std::int64_t size : n_values)
                    for (std::size_t s = 0; s < seeds; ++s) {
                        GenSpec spec;
                        spec.family = parse_family(f);
                        spec.n = size;
                        spec.requests = requests;
                        spec.t_max = t_max > 0 ? t_max : 2 * size;
                        spec.seed = seed + s;
                        suite.push_back(spec);
                    }
            BenchReport rep = run_bench(suite, jobs, level, delta);
            emit(output, format == "csv" ? bench_to_csv(rep) : bench_to_json(rep));
            for (const BenchRow& row : rep.rows)
                if (!row.error.empty() || !row.bound_satisfied) return kInfeasible;
            return kOk;
        }

        if (*report) {
            if (format == "svg") {
                if (instance_path.empty() || solution_path.empty())
                    throw std::invalid_argument("svg needs --instance and --solution");
                Instance inst = parse_instance(slurp(instance_path));
                std::vector<GridEdge> edges = parse_solution(slurp(solution_path));
                emit(output, solution_to_svg(inst, {edges.begin(), edges.end()}));
                return kOk;
            }
            if (bench_path.empty()) throw std::invalid_argument("report needs --bench");
            // round-trip through the row records so csv output stays canonical
            auto j = nlohmann::json::parse(slurp(bench_path));
            BenchReport rep;
            for (const auto& r : j.at("rows")) {
                BenchRow row;
                row.family = r.at("family").get<std::string>();
                row.n = r.at("n").get<Node>();
                row.requests = r.at("requests").get<std::size_t>();
                row.seed = r.at("seed").get<std::uint64_t>();
                row.delta = r.at("delta").get<std::int64_t>();
                row.cost_lineon = r.at("cost_lineon").get<Cost>();
                row.cost_triangle = r.at("cost_triangle").get<Cost>();
                row.sum_radii = r.at("sum_radii").get<Cost>();
                if (r.contains("cost_exact")) row.cost_exact = r.at("cost_exact").get<Cost>();
                row.ratio_vs_triangle = r.at("ratio_vs_triangle").get<double>();
                row.ratio_vs_sum_radii = r.at("ratio_vs_sum_radii").get<double>();
                row.bound_rhs = r.at("bound_rhs").get<double>();
                row.bound_satisfied = r.at("bound_satisfied").get<bool>();
                if (r.contains("error")) row.error = r.at("error").get<std::string>();
                rep.rows.push_back(row);
            }
            rep.max_ratio = j.value("max_ratio", 0.0);
            emit(output, format == "csv" ? bench_to_csv(rep) : slurp(bench_path));
            return kOk;
        }
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kAssert;
    } catch (const instance_too_large& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kGuard;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kOk;
}
