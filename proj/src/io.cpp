#include "mcdline/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mcd {

using nlohmann::json;

namespace {
json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument(std::string(what) + ": not valid JSON");
    return j;
}
}  // namespace

Instance parse_instance(const std::string& text) {
    json j = parse(text, "instance");
    Instance inst;
    try {
        inst.n = j.at("n").get<Node>();
        inst.origin = j.at("origin").get<Node>();
        for (const json& r : j.at("requests"))
            inst.requests.push_back({r.at(0).get<Node>(), r.at(1).get<Time>()});
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance: ") + e.what());
    }
    inst.validate();
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    json reqs = json::array();
    for (const Replica& r : inst.requests) reqs.push_back({r.node, r.time});
    return json{{"n", inst.n}, {"origin", inst.origin}, {"requests", reqs}}.dump();
}

std::vector<GridEdge> parse_solution(const std::string& text) {
    json j = parse(text, "solution");
    std::vector<GridEdge> edges;
    try {
        for (const json& e : j.at("edges")) {
            std::string kind = e.at("kind").get<std::string>();
            if (kind != "h" && kind != "a")
                throw std::invalid_argument("solution: edge kind must be \"h\" or \"a\"");
            edges.push_back({kind == "h" ? EdgeKind::Horizontal : EdgeKind::Arc,
                             {e.at("node").get<Node>(), e.at("time").get<Time>()}});
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("solution: ") + e.what());
    }
    return edges;
}

namespace {
json edges_to_json(auto const& edges) {
    json arr = json::array();
    for (const GridEdge& e : edges)
        arr.push_back({{"kind", e.kind == EdgeKind::Horizontal ? "h" : "a"},
                       {"node", e.anchor.node},
                       {"time", e.anchor.time}});
    return json{{"edges", arr}};
}
}  // namespace

std::string solution_to_json(const std::set<GridEdge>& edges) {
    return edges_to_json(edges).dump();
}
std::string solution_to_json(const std::vector<GridEdge>& edges) {
    return edges_to_json(edges).dump();
}

std::string report_to_json(const SolutionReport& rep) {
    json j = edges_to_json(rep.edges);
    j["total_cost"] = rep.total_cost;
    j["horizontal_cost"] = rep.horizontal_cost;
    j["arc_cost"] = rep.arc_cost;
    j["feasible"] = rep.feasible;
    json wits = json::array();
    for (const std::vector<Replica>& w : rep.witnesses) {
        json path = json::array();
        for (const Replica& r : w) path.push_back({r.node, r.time});
        wits.push_back(path);
    }
    j["witnesses"] = wits;
    if (rep.first_unreachable) j["first_unreachable"] = *rep.first_unreachable;
    return j.dump();
}

std::vector<Point> parse_points(std::istream& in) {
    std::vector<Point> points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = parse(line, "points");
        try {
            points.push_back({j.at("x").get<double>(), j.at("y").get<double>()});
        } catch (const json::exception& e) {
            throw std::invalid_argument("points line " + std::to_string(lineno) + ": " + e.what());
        }
        if (points.size() > 1 && points.back().y < points[points.size() - 2].y)
            throw std::invalid_argument("points line " + std::to_string(lineno) +
                                        ": y must be non-decreasing");
    }
    return points;
}

void write_points(std::ostream& out, std::span<const Point> points) {
    for (const Point& p : points)
        out << json{{"x", p.x}, {"y", p.y}}.dump() << "\n";
}

std::vector<Segment> parse_segments(const std::string& text) {
    json j = parse(text, "segments");
    std::vector<Segment> segments;
    try {
        for (const json& s : j) {
            std::string o = s.at("orientation").get<std::string>();
            if (o != "h" && o != "v")
                throw std::invalid_argument("segments: orientation must be \"h\" or \"v\"");
            segments.push_back({o == "h" ? Orientation::Horizontal : Orientation::Vertical,
                                s.at("x0").get<double>(), s.at("y0").get<double>(),
                                s.at("length").get<double>()});
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("segments: ") + e.what());
    }
    return segments;
}

std::string segments_to_json(std::span<const Segment> segments) {
    json arr = json::array();
    for (const Segment& s : segments)
        arr.push_back({{"orientation", s.orientation == Orientation::Horizontal ? "h" : "v"},
                       {"x0", s.x0},
                       {"y0", s.y0},
                       {"length", s.length}});
    return arr.dump();
}

std::string solution_to_svg(const Instance& inst, const std::set<GridEdge>& edges) {
    const double cell = 16.0, pad = 24.0;
    Time t_max = inst.horizon();
    for (const GridEdge& e : edges) t_max = std::max(t_max, e.other().time);
    auto px = [&](Node v) { return pad + static_cast<double>(v - 1) * cell; };
    // time grows upward, SVG y grows downward
    auto py = [&](Time t) { return pad + static_cast<double>(t_max - t) * cell; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << 2 * pad + static_cast<double>(inst.n - 1) * cell << "\" height=\""
        << 2 * pad + static_cast<double>(t_max) * cell << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (Node v = 1; v <= inst.n; ++v)
        svg << "<line x1=\"" << px(v) << "\" y1=\"" << py(0) << "\" x2=\"" << px(v)
            << "\" y2=\"" << py(t_max) << "\" stroke=\"#eee\"/>\n";
    for (const GridEdge& e : edges) {
        Replica a = e.anchor, b = e.other();
        const char* color = e.kind == EdgeKind::Horizontal ? "#1f77b4" : "#2ca02c";
        svg << "<line x1=\"" << px(a.node) << "\" y1=\"" << py(a.time) << "\" x2=\""
            << px(b.node) << "\" y2=\"" << py(b.time) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
    }
    for (const Replica& r : inst.requests)
        svg << "<circle cx=\"" << px(r.node) << "\" cy=\"" << py(r.time)
            << "\" r=\"3.5\" fill=\"#d62728\"/>\n";
    svg << "<circle cx=\"" << px(inst.origin) << "\" cy=\"" << py(0)
        << "\" r=\"4\" fill=\"black\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace mcd
