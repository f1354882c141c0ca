#pragma once

#include <cstdint>
#include <string>

#include "mcdline/srsa.hpp"

namespace mcd {

enum class Family { Uniform, Clustered, Staircase, BinaryCascade };

const char* family_name(Family f);
Family parse_family(const std::string& name);  // throws std::invalid_argument

// Deterministic in every field: same spec, same output.
struct GenSpec {
    Family family = Family::Uniform;
    Node n = 64;
    std::size_t requests = 16;
    Time t_max = 64;
    std::uint64_t seed = 0;
    // family parameters
    int clusters = 3;
    Node cluster_width = 0;       // 0: n/16 + 1
    double staircase_alpha = 0.5; // drift per step is ceil(n^alpha)
    int cascade_depth = 0;        // 0: log2(n); overrides `requests` with 2^depth
    double scale = 1.0;           // coordinate scale for point streams
};

Instance generate(const GenSpec& spec);
std::vector<Point> generate_points(const GenSpec& spec);

}  // namespace mcd
