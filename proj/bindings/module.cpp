#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mcdline/bench.hpp"
#include "mcdline/exact.hpp"
#include "mcdline/generators.hpp"
#include "mcdline/io.hpp"
#include "mcdline/srsa.hpp"

namespace py = pybind11;
using namespace mcd;

namespace {

Instance instance_from(py::object obj) {
    if (py::isinstance<Instance>(obj)) return obj.cast<Instance>();
    Instance inst;
    inst.n = obj["n"].cast<Node>();
    inst.origin = obj["origin"].cast<Node>();
    for (auto r : obj["requests"]) {
        auto pair = r.cast<py::sequence>();
        inst.requests.push_back({pair[0].cast<Node>(), pair[1].cast<Time>()});
    }
    return inst;
}

AssertLevel level_from(const std::string& s) {
    if (s == "off") return AssertLevel::Off;
    if (s == "cheap") return AssertLevel::Cheap;
    if (s == "full") return AssertLevel::Full;
    throw std::invalid_argument("assert level must be off, cheap or full");
}

py::dict report_dict(const SolutionReport& rep) {
    py::dict d;
    d["feasible"] = rep.feasible;
    d["total_cost"] = rep.total_cost;
    d["horizontal_cost"] = rep.horizontal_cost;
    d["arc_cost"] = rep.arc_cost;
    py::list edges;
    for (const GridEdge& e : rep.edges) {
        py::dict ed;
        ed["kind"] = e.kind == EdgeKind::Horizontal ? "h" : "a";
        ed["node"] = e.anchor.node;
        ed["time"] = e.anchor.time;
        edges.append(ed);
    }
    d["edges"] = edges;
    return d;
}

std::vector<Point> points_from(py::iterable pts) {
    std::vector<Point> out;
    for (auto p : pts) {
        if (py::isinstance<py::dict>(p))
            out.push_back({p["x"].cast<double>(), p["y"].cast<double>()});
        else {
            auto seq = p.cast<py::sequence>();
            out.push_back({seq[0].cast<double>(), seq[1].cast<double>()});
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Online movement-cost delivery on a line: solvers and checkers";

    py::class_<Instance>(m, "Instance")
        .def(py::init([](Node n, Node origin, std::vector<std::pair<Node, Time>> reqs) {
                 Instance inst{n, origin, {}};
                 for (auto [v, t] : reqs) inst.requests.push_back({v, t});
                 inst.validate();
                 return inst;
             }),
             py::arg("n"), py::arg("origin"), py::arg("requests") = std::vector<std::pair<Node, Time>>{})
        .def_readonly("n", &Instance::n)
        .def_readonly("origin", &Instance::origin)
        .def_property_readonly("requests",
                               [](const Instance& inst) {
                                   std::vector<std::pair<Node, Time>> out;
                                   for (const Replica& r : inst.requests)
                                       out.emplace_back(r.node, r.time);
                                   return out;
                               })
        .def("to_json", [](const Instance& inst) { return instance_to_json(inst); })
        .def("__repr__", [](const Instance& inst) {
            return "Instance(n=" + std::to_string(inst.n) + ", origin=" +
                   std::to_string(inst.origin) + ", requests=" +
                   std::to_string(inst.requests.size()) + ")";
        });

    m.def("parse_instance", [](const std::string& text) { return parse_instance(text); },
          py::arg("json_text"));

    m.def(
        "generate",
        [](const std::string& family, Node n, std::size_t requests, Time t_max,
           std::uint64_t seed) {
            GenSpec spec;
            spec.family = parse_family(family);
            spec.n = n;
            spec.requests = requests;
            if (t_max) spec.t_max = t_max;
            spec.seed = seed;
            return generate(spec);
        },
        py::arg("family"), py::arg("n"), py::arg("requests") = 16, py::arg("t_max") = 0,
        py::arg("seed") = 0);

    m.def(
        "run_triangle",
        [](py::object inst_obj) {
            Instance inst = instance_from(inst_obj);
            TriangleTrace trace = run_triangle(inst);
            py::dict d = report_dict(check_solution(inst, trace.edges));
            d["sum_radii"] = sum_radii(trace);
            py::list radii;
            for (const TriangleRequestRecord& r : trace.per_request) radii.append(r.radius);
            d["radii"] = radii;
            return d;
        },
        py::arg("instance"));

    m.def(
        "run_lineon",
        [](py::object inst_obj, std::optional<std::int64_t> delta, const std::string& level) {
            Instance inst = instance_from(inst_obj);
            LineonResult res = run_lineon(inst, delta, level_from(level));
            py::dict d = report_dict(res.report);
            d["delta"] = res.state.sys.delta;
            d["padded_n"] = res.state.sys.padded_n;
            d["commits"] = res.state.commits.size();
            d["sum_radii"] = sum_radii(res.state.triangle);
            d["cost_triangle"] = res.state.triangle.total_cost();
            return d;
        },
        py::arg("instance"), py::arg("delta") = std::nullopt, py::arg("assert_level") = "cheap");

    m.def(
        "run_lineonp",
        [](py::object inst_obj, const std::string& level) {
            Instance inst = instance_from(inst_obj);
            LineonpResult res = run_lineonp(inst, level_from(level));
            py::dict d = report_dict(res.report);
            d["cost_snapped"] = res.cost_snapped;
            d["cost_plain"] = res.cost_plain;
            d["used_snapped"] = res.used_snapped;
            return d;
        },
        py::arg("instance"), py::arg("assert_level") = "cheap");

    m.def(
        "run_onrsa",
        [](py::iterable pts, const std::string& level, double root_x) {
            OnRsaResult res = run_onrsa(points_from(pts), level_from(level), root_x);
            py::dict d;
            d["cost"] = res.cost;
            d["feasible"] = res.report.feasible;
            d["phases"] = res.phases.size();
            py::list segs;
            for (const Segment& s : res.segments) {
                py::dict sd;
                sd["orientation"] = s.orientation == Orientation::Horizontal ? "h" : "v";
                sd["x0"] = s.x0;
                sd["y0"] = s.y0;
                sd["length"] = s.length;
                segs.append(sd);
            }
            d["segments"] = segs;
            return d;
        },
        py::arg("points"), py::arg("assert_level") = "cheap", py::arg("root_x") = 0.0);

    m.def(
        "srsa_exact",
        [](py::iterable pts, double root_x) { return srsa_exact(points_from(pts), root_x); },
        py::arg("points"), py::arg("root_x") = 0.0);

    m.def(
        "exact_opt",
        [](py::object inst_obj) {
            return report_dict(exact_opt(instance_from(inst_obj)));
        },
        py::arg("instance"));

    m.def(
        "check_solution",
        [](py::object inst_obj, py::iterable edges) {
            Instance inst = instance_from(inst_obj);
            std::set<GridEdge> set;
            for (auto e : edges) {
                GridEdge ge;
                ge.kind = e["kind"].cast<std::string>() == "h" ? EdgeKind::Horizontal
                                                               : EdgeKind::Arc;
                ge.anchor = {e["node"].cast<Node>(), e["time"].cast<Time>()};
                set.insert(ge);
            }
            return report_dict(check_solution(inst, set));
        },
        py::arg("instance"), py::arg("edges"));

    m.def(
        "competitive_report",
        [](py::object inst_obj, std::optional<std::int64_t> delta, const std::string& level) {
            CompetitiveReport rep =
                competitive_report(instance_from(inst_obj), delta, level_from(level));
            py::dict d;
            d["cost_lineon"] = rep.cost_lineon;
            d["cost_triangle"] = rep.cost_triangle;
            d["sum_radii"] = rep.sum_radii;
            d["cost_exact"] = rep.cost_exact ? py::cast(*rep.cost_exact) : py::none();
            d["ratio_vs_triangle"] = rep.ratio_vs_triangle;
            d["ratio_vs_sum_radii"] = rep.ratio_vs_sum_radii;
            d["delta"] = rep.delta_used;
            d["padded_n"] = rep.padded_n;
            d["bound_rhs"] = rep.bound_rhs;
            d["bound_satisfied"] = rep.bound_satisfied;
            return d;
        },
        py::arg("instance"), py::arg("delta") = std::nullopt, py::arg("assert_level") = "cheap");
}
