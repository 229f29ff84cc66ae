#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "cactus/boltzmann.hpp"
#include "cactus/errors.hpp"
#include "cactus/planar_map.hpp"

using namespace cactus;

namespace {

CombinatorialMap single_edge() { return CombinatorialMap({1, 0}, {0, 1}, 0, 0); }
CombinatorialMap loop_map() { return CombinatorialMap({1, 0}, {1, 0}, 0, 0); }

// Square 0-1-2-3: edge i joins vertex i (half-edge 2i) to vertex i+1 (half-edge 2i+1).
CombinatorialMap square() {
    std::vector<int> opp(8), next(8);
    for (int i = 0; i < 4; ++i) {
        opp[2 * i] = 2 * i + 1;
        opp[2 * i + 1] = 2 * i;
        const int out = 2 * i, in = (2 * i + 7) % 8;
        next[out] = in;
        next[in] = out;
    }
    return CombinatorialMap(opp, next, 0, 0);
}

std::vector<int> face_degrees(const CombinatorialMap& m) {
    std::vector<int> d;
    for (const auto& f : faces(m)) d.push_back(f.degree);
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST_CASE("vertex map") {
    const CombinatorialMap m;
    CHECK(m.is_vertex_map());
    CHECK(m.vertex_count() == 1);
    CHECK(face_degrees(m) == std::vector<int>{0});
    CHECK(euler_holds(m));
    CHECK(classify(m) == MapClass::positive);
}

TEST_CASE("single edge and loop") {
    const auto e = single_edge();
    CHECK(e.vertex_count() == 2);
    CHECK(face_degrees(e) == std::vector<int>{2});
    CHECK(classify(e) == MapClass::positive);
    const auto l = loop_map();
    CHECK(l.vertex_count() == 1);
    CHECK(euler_holds(l));
    CHECK(classify(l) == MapClass::null);
}

TEST_CASE("embedded square has two faces of degree 4") {
    const auto m = square();
    CHECK(m.vertex_count() == 4);
    CHECK(face_degrees(m) == std::vector<int>{4, 4});
    CHECK(m.underlying_graph().edges().size() == 4);
    const auto fe = face_of_half_edges(m);
    CHECK(fe.size() == 8);
}

TEST_CASE("inconsistent permutations are rejected") {
    CHECK_THROWS_AS(CombinatorialMap({0, 1}, {0, 1}, 0, 0), InputError);
    CHECK_THROWS_AS(CombinatorialMap({1, 0}, {0, 0}, 0, 0), InputError);
    CHECK_THROWS_AS(CombinatorialMap({1, 0}, {0, 1}, 3, 0), InputError);
}

TEST_CASE("encode and decode round trip") {
    CHECK(decode(encode(CombinatorialMap{})) == CombinatorialMap{});
    CHECK(decode(encode(single_edge())) == single_edge());
    Rng rng(606);
    for (int d : {3, 4}) {
        const BoltzmannSampler sampler(WeightSeq::single(d));
        ConditionedOptions opts;
        opts.method = ConditioningMethod::cyclic;
        for (int i = 0; i < 250; ++i) {
            const int n = 3 + static_cast<int>(rng.below(60));
            const auto s = sampler.sample(n, rng.coin() ? Variant::positive : Variant::negative, rng, opts);
            REQUIRE(decode(encode(s.map)) == s.map);
            std::stringstream ss;
            write_map(ss, s.map);
            REQUIRE(read_map(ss) == s.map);
        }
    }
}
