#include <doctest.h>

#include <stdexcept>

#include <set>

#include "mcdline/generators.hpp"

using namespace mcd;

TEST_CASE("generation is deterministic in the spec") {
    for (Family f : {Family::Uniform, Family::Clustered, Family::Staircase,
                     Family::BinaryCascade}) {
        GenSpec spec;
        spec.family = f;
        spec.n = 64;
        spec.requests = 20;
        spec.t_max = 50;
        spec.seed = 123;
        Instance a = generate(spec), b = generate(spec);
        CHECK(a.n == b.n);
        CHECK(a.origin == b.origin);
        CHECK(a.requests == b.requests);
        spec.seed = 124;
        Instance c = generate(spec);
        CHECK((f == Family::BinaryCascade || a.requests != c.requests));
    }
}

TEST_CASE("all families produce valid instances") {
    for (Family f : {Family::Uniform, Family::Clustered, Family::Staircase,
                     Family::BinaryCascade})
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            GenSpec spec;
            spec.family = f;
            spec.n = 100;
            spec.requests = 15;
            spec.t_max = 40;
            spec.seed = seed;
            CHECK_NOTHROW(generate(spec).validate());
        }
}

TEST_CASE("empty request list") {
    GenSpec spec;
    spec.requests = 0;
    CHECK(generate(spec).requests.empty());
}

TEST_CASE("cascade counts and distinct times") {
    GenSpec spec;
    spec.family = Family::BinaryCascade;
    spec.n = 64;  // depth log2(64) = 6
    Instance inst = generate(spec);
    CHECK(inst.requests.size() == 64);
    std::set<Time> times;
    std::set<Node> nodes;
    for (const Replica& r : inst.requests) {
        times.insert(r.time);
        nodes.insert(r.node);
    }
    CHECK(times.size() == 64);  // strictly increasing
    CHECK(nodes.size() == 64);  // bit-reversal hits each block once
}

TEST_CASE("point streams satisfy the online order") {
    for (Family f : {Family::Uniform, Family::Staircase})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            GenSpec spec;
            spec.family = f;
            spec.n = 32;
            spec.requests = 12;
            spec.t_max = 32;
            spec.seed = seed;
            std::vector<Point> pts = generate_points(spec);
            CHECK(pts.size() == 12);
            for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].y >= pts[i - 1].y);
            for (const Point& p : pts) {
                CHECK(p.x >= 0.0);
                CHECK(p.y >= 0.0);
            }
        }
}

TEST_CASE("spec violations") {
    GenSpec spec;
    spec.n = 1;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
    CHECK_THROWS_AS(parse_family("nope"), std::invalid_argument);
    CHECK(parse_family("cascade") == Family::BinaryCascade);
    CHECK(family_name(Family::Staircase) == std::string("staircase"));
}
