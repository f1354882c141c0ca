#pragma once

#include <iosfwd>
#include <string>

#include "mcdline/srsa.hpp"

namespace mcd {

// All parsers throw std::invalid_argument with a description on bad input.

// {"n": int, "origin": int, "requests": [[node, time], ...]}
Instance parse_instance(const std::string& text);
std::string instance_to_json(const Instance& inst);

// {"edges": [{"kind": "h"|"a", "node": int, "time": int}, ...]}
std::vector<GridEdge> parse_solution(const std::string& text);
std::string solution_to_json(const std::set<GridEdge>& edges);
std::string solution_to_json(const std::vector<GridEdge>& edges);

// report JSON embeds the cost breakdown and witness paths
std::string report_to_json(const SolutionReport& rep);

// JSON lines, one {"x": float, "y": float} per line
std::vector<Point> parse_points(std::istream& in);
void write_points(std::ostream& out, std::span<const Point> points);

// [{"orientation": "h"|"v", "x0": float, "y0": float, "length": float}, ...]
std::vector<Segment> parse_segments(const std::string& text);
std::string segments_to_json(std::span<const Segment> segments);

// static picture of a solution: grid, edges, requests
std::string solution_to_svg(const Instance& inst, const std::set<GridEdge>& edges);

}  // namespace mcd
