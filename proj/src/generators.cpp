#include "mcdline/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mcd {

const char* family_name(Family f) {
    switch (f) {
        case Family::Uniform: return "uniform";
        case Family::Clustered: return "clustered";
        case Family::Staircase: return "staircase";
        case Family::BinaryCascade: return "cascade";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    for (Family f : {Family::Uniform, Family::Clustered, Family::Staircase,
                     Family::BinaryCascade})
        if (name == family_name(f)) return f;
    throw std::invalid_argument("unknown family: " + name);
}

namespace {

std::vector<Time> sorted_times(std::mt19937_64& rng, std::size_t count, Time t_max) {
    std::uniform_int_distribution<Time> dist(0, t_max);
    std::vector<Time> times(count);
    for (Time& t : times) t = dist(rng);
    std::sort(times.begin(), times.end());
    return times;
}

std::uint64_t bit_reverse(std::uint64_t v, int bits) {
    std::uint64_t r = 0;
    for (int b = 0; b < bits; ++b)
        if (v >> b & 1) r |= std::uint64_t{1} << (bits - 1 - b);
    return r;
}

}  // namespace

Instance generate(const GenSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("generate: n must be >= 2");
    if (spec.t_max < 0) throw std::invalid_argument("generate: t_max must be >= 0");
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<Node> node_dist(1, spec.n);

    Instance inst;
    inst.n = spec.n;
    inst.origin = node_dist(rng);

    switch (spec.family) {
        case Family::Uniform: {
            for (Time t : sorted_times(rng, spec.requests, spec.t_max))
                inst.requests.push_back({node_dist(rng), t});
            break;
        }
        case Family::Clustered: {
            int k = std::max(1, spec.clusters);
            Node width = spec.cluster_width > 0 ? spec.cluster_width : spec.n / 16 + 1;
            std::vector<Node> centers(k);
            for (Node& c : centers) c = node_dist(rng);
            std::uniform_int_distribution<int> pick(0, k - 1);
            std::uniform_int_distribution<Node> off(-width, width);
            for (Time t : sorted_times(rng, spec.requests, spec.t_max)) {
                Node v = std::clamp<Node>(centers[pick(rng)] + off(rng), 1, spec.n);
                inst.requests.push_back({v, t});
            }
            break;
        }
        case Family::Staircase: {
            // diagonal walk drifting +-ceil(n^alpha) per step, reflected at
            // the line ends; repeated serve-vs-store dilemmas
            Node drift = static_cast<Node>(
                std::ceil(std::pow(static_cast<double>(spec.n), spec.staircase_alpha)));
            Time gap = std::max<Time>(1, spec.requests ? spec.t_max / spec.requests : 1);
            Node v = inst.origin;
            std::bernoulli_distribution coin(0.5);
            for (std::size_t i = 0; i < spec.requests; ++i) {
                v += coin(rng) ? drift : -drift;
                if (v < 1) v = 2 - v;
                if (v > spec.n) v = 2 * spec.n - v;
                v = std::clamp<Node>(v, 1, spec.n);
                inst.requests.push_back({v, static_cast<Time>(i + 1) * gap});
            }
            break;
        }
        case Family::BinaryCascade: {
            // bit-reversed node order at ruler-spaced times: each doubling of
            // the revisit distance comes with a geometrically longer pause
            int depth = spec.cascade_depth > 0
                            ? spec.cascade_depth
                            : std::max(1, static_cast<int>(std::bit_width(
                                              static_cast<std::uint64_t>(spec.n))) - 1);
            std::uint64_t count = std::uint64_t{1} << depth;
            Node span = std::max<Node>(1, spec.n / static_cast<Node>(count));
            inst.origin = 1;
            Time t = 0;
            for (std::uint64_t i = 0; i < count; ++i) {
                t += Time{1} << std::countr_zero(i + 1);
                Node v = std::clamp<Node>(
                    static_cast<Node>(bit_reverse(i, depth)) * span + 1, 1, spec.n);
                inst.requests.push_back({v, t});
            }
            break;
        }
    }
    inst.validate();
    return inst;
}

std::vector<Point> generate_points(const GenSpec& spec) {
    // continuous analogue: the discrete instance jittered off the lattice
    Instance inst = generate(spec);
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    std::vector<Point> points;
    points.reserve(inst.requests.size());
    for (const Replica& r : inst.requests)
        points.push_back({(static_cast<double>(r.node) - jitter(rng)) * spec.scale,
                          (static_cast<double>(r.time) + jitter(rng)) * spec.scale});
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.y < b.y; });
    return points;
}

}  // namespace mcd
