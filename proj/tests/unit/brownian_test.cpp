#include "doctest.h"

#include <cmath>
#include <map>

#include "cactus/brownian.hpp"
#include "cactus/errors.hpp"
#include "cactus/stats.hpp"

using namespace cactus;

namespace {

// Minimum over the path by collecting the ancestor lines of both ends.
double brute_path_min(const LabeledTree& t, int u, int v) {
    std::vector<int> up_u{u}, up_v{v};
    while (up_u.back() != 0) up_u.push_back(t.parent(up_u.back()));
    while (up_v.back() != 0) up_v.push_back(t.parent(up_v.back()));
    int meet = 0;
    for (int a : up_u)
        if (std::find(up_v.begin(), up_v.end(), a) != up_v.end()) {
            meet = a;
            break;
        }
    double best = t.label(meet);
    for (const auto* line : {&up_u, &up_v})
        for (int a : *line) {
            if (a == meet) break;
            best = std::min({best, t.label(a), t.edge_min(a)});
        }
    return best;
}

int degree(const LabeledTree& t, int v) { return static_cast<int>(t.children(v).size()) + (v > 0 ? 1 : 0); }

}  // namespace

TEST_CASE("labeled tree validation") {
    CHECK_THROWS_AS(LabeledTree({-1, 0, 3, 0}, {0, 0, 0, 0}), InputError);
    CHECK_THROWS_AS(LabeledTree({-1, 0}, {0}), InputError);
    CHECK_THROWS_AS(LabeledTree({-1, 0}, {0, 1}, LabelMode::bridge, {0, 2}), InputError);
}

TEST_CASE("one-edge trees") {
    Rng rng(1);
    std::vector<double> child;
    for (int i = 0; i < 20000; ++i) {
        const auto t = sample_labeled_tree(1, rng);
        REQUIRE(t.size() == 2);
        CHECK(t.label(0) == 0);
        child.push_back(t.label(1));
    }
    CHECK(std::abs(mean(child)) < 4 / std::sqrt(20000.0));
    CHECK(ks_vs_cdf(child, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }) < 0.02);
}

TEST_CASE("three-edge shapes are uniform") {
    Rng rng(2);
    std::map<std::vector<int>, int> freq;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) {
        const auto t = sample_labeled_tree(3, rng);
        std::vector<int> shape;
        for (int v = 0; v < t.size(); ++v) shape.push_back(t.parent(v));
        ++freq[shape];
    }
    REQUIRE(freq.size() == 5);
    const double sd = std::sqrt(0.2 * 0.8 / draws);
    for (const auto& [shape, count] : freq) CHECK(std::abs(count / static_cast<double>(draws) - 0.2) < 4 * sd);
}

TEST_CASE("label variance grows like depth") {
    Rng rng(3);
    std::map<int, std::vector<double>> by_depth;
    for (int i = 0; i < 20000; ++i) {
        const auto t = sample_labeled_tree(60, rng);
        for (int h : {2, 5}) {
            for (int v = 0; v < t.size(); ++v)
                if (t.depth(v) == h) {
                    by_depth[h].push_back(t.label(v));
                    break;
                }
        }
    }
    for (auto& [h, xs] : by_depth) {
        double s2 = 0;
        for (double x : xs) s2 += x * x;
        const double var = s2 / xs.size();
        CHECK(std::abs(var - h) < 4 * h * std::sqrt(2.0 / xs.size()));
    }
}

TEST_CASE("distances on a fixed chain") {
    const LabeledTree t({-1, 0, 1}, {0, 0.5, -0.3});
    CHECK(kac_distance(t, 1, 1) == 0);
    CHECK(kac_distance(t, 0, 2) == doctest::Approx(0.3 * std::pow(4.0, -0.25)));
    CHECK(min_label_vertex(t) == 2);
    const LabeledTree up({-1, 0, 1, 0}, {0, 1, 2, 3});
    CHECK(min_label_vertex(up) == 0);
    const LabeledTree doubled({-1, 0, 1}, {0, 1.0, -0.6});
    CHECK(min_label_vertex(doubled) == min_label_vertex(t));
}

TEST_CASE("path minima match brute force") {
    Rng rng(4);
    for (auto mode : {LabelMode::vertex, LabelMode::bridge}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto t = sample_labeled_tree(40, rng, mode);
            for (int u = 0; u < t.size(); u += 3)
                for (int v = 0; v < t.size(); v += 2) CHECK(path_min(t, u, v) == brute_path_min(t, u, v));
        }
    }
}

TEST_CASE("distance to the minimum") {
    Rng rng(5);
    const auto t = sample_labeled_tree(200, rng);
    const int star = min_label_vertex(t);
    for (int v = 0; v < t.size(); ++v) CHECK(kac_distance(t, star, v) == doctest::Approx(distance_to_min(t, v)));
    const auto b = sample_labeled_tree(200, rng, LabelMode::bridge);
    CHECK(global_min(b) <= b.label(min_label_vertex(b)));
}

TEST_CASE("mass vertices follow contour multiplicities") {
    Rng rng(6);
    const auto one = sample_labeled_tree(1, rng);
    int root = 0;
    for (int i = 0; i < 40000; ++i) root += sample_mass_vertex(one, rng) == 0;
    CHECK(std::abs(root / 40000.0 - 0.5) < 4 * std::sqrt(0.25 / 40000));

    const auto t = sample_labeled_tree(6, rng);
    std::vector<int> hits(t.size(), 0);
    const int draws = 120000;
    for (int i = 0; i < draws; ++i) ++hits[sample_mass_vertex(t, rng)];
    for (int v = 0; v < t.size(); ++v) {
        const double p = degree(t, v) / 12.0;
        CHECK(std::abs(hits[v] / static_cast<double>(draws) - p) < 4 * std::sqrt(p * (1 - p) / draws));
    }
}

TEST_CASE("separating split") {
    Rng rng(7);
    CHECK_THROWS_AS(separating_split(sample_labeled_tree(3, rng), rng), InputError);
    for (auto mode : {LabelMode::vertex, LabelMode::bridge}) {
        std::vector<double> vols;
        for (int i = 0; i < 20000; ++i) {
            const auto t = sample_labeled_tree(100, rng, mode);
            const auto s = separating_split(t, rng);
            CHECK(s.vol1 + s.vol2 == doctest::Approx(1.0));
            CHECK(s.vol1 >= 0);
            CHECK(s.vol1 <= 1);
            vols.push_back(s.vol1);
        }
        CHECK(std::abs(mean(vols) - 0.5) < 4 * standard_error(vols));
    }
}

TEST_CASE("arc-sine construction agrees with the split law") {
    Rng rng(8);
    std::vector<double> arc, split;
    for (int i = 0; i < 5000; ++i) {
        const auto t = sample_labeled_tree(2000, rng, LabelMode::bridge);
        const double a = arc_sine_split_oracle(t, rng);
        CHECK(a >= 0);
        CHECK(a <= 1);
        arc.push_back(a);
        split.push_back(separating_split(t, rng).vol1);
    }
    CHECK(ks_two_sample(arc, split) < 1.95 * std::sqrt(2.0 / 5000));
}

TEST_CASE("ball masses") {
    Rng rng(9);
    for (auto mode : {LabelMode::vertex, LabelMode::bridge}) {
        const auto t = sample_labeled_tree(300, rng, mode);
        const std::vector<double> radii{0.0, 0.1, 0.3, 0.6, 1.0, 100.0};
        for (int c = 0; c < t.size(); c += 37) {
            const auto m = ball_masses(t, c, radii);
            for (std::size_t r = 0; r < radii.size(); ++r) {
                double brute = 0;
                for (int w = 0; w < t.size(); ++w)
                    if (kac_distance(t, c, w) <= radii[r]) brute += degree(t, w) / 600.0;
                CHECK(m[r] == doctest::Approx(brute).epsilon(1e-12));
                if (r > 0) CHECK(m[r] >= m[r - 1]);
            }
            CHECK(m.back() == doctest::Approx(1.0));
        }
        const auto cm = continuum_ball_masses(t, rng, radii);
        for (std::size_t r = 1; r < radii.size(); ++r) CHECK(cm[r] >= cm[r - 1]);
        CHECK(cm.back() == doctest::Approx(1.0));
    }
}
