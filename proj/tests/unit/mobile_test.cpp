#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "cactus/boltzmann.hpp"
#include "cactus/errors.hpp"
#include "cactus/mobile.hpp"

using namespace cactus;

namespace {

FourTypeTree tree_of(std::vector<PreorderRecord> recs) { return FourTypeTree(recs); }

// Count of cyclic label sequences around one odd vertex by brute force.
long long enumerate_admissible(VType parent, const std::vector<VType>& kids) {
    const int k = static_cast<int>(kids.size());
    std::vector<int> lab(k);
    long long count = 0;
    std::function<void(int, int)> rec = [&](int j, int prev) {
        if (j == k) {
            // closing step back to the parent (label 0)
            const int drop = parent == VType::t2 ? 0 : 1;
            if (0 >= prev - drop) ++count;
            return;
        }
        const int drop = kids[j] == VType::t2 ? 0 : 1;
        for (int l = prev - drop; l <= k + 2; ++l) rec(j + 1, l);
    };
    rec(0, 0);
    return count;
}

Mobile one_odd_vertex(VType parent, const std::vector<VType>& kids) {
    std::vector<PreorderRecord> r;
    if (parent == VType::t1) {
        r.push_back({VType::t1, 1});
        r.push_back({VType::t3, static_cast<int>(kids.size())});
    } else {
        r.push_back({VType::t2, 2});
        r.push_back({VType::t4, static_cast<int>(kids.size())});
    }
    for (VType c : kids) {
        r.push_back({c, c == VType::t2 ? 1 : 0});
        if (c == VType::t2) r.push_back({VType::t4, 0});
    }
    if (parent == VType::t2) r.push_back({VType::t4, 0});
    return {tree_of(r), std::vector<int>(r.size(), 0)};
}

}  // namespace

TEST_CASE("validation of structure and labels") {
    const Mobile root_only{tree_of({{VType::t1, 0}}), {0}};
    CHECK(validate(root_only).empty());
    CHECK_FALSE(validate(tree_of({{VType::t1, 1}, {VType::t1, 0}})).empty());
    CHECK_FALSE(validate(tree_of({{VType::t3, 0}})).empty());
    CHECK_FALSE(validate(tree_of({{VType::t2, 1}, {VType::t4, 0}})).empty());
    const Mobile bad{tree_of({{VType::t1, 1}, {VType::t3, 1}, {VType::t1, 0}}), {0, 0, -2}};
    const auto v = validate(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].vertex == 2);
    const Mobile ok{tree_of({{VType::t1, 1}, {VType::t3, 1}, {VType::t1, 0}}), {0, 0, -1}};
    CHECK(validate(ok).empty());
    CHECK_THROWS_AS(tree_of({{VType::t1, 2}, {VType::t3, 0}}), InputError);
}

TEST_CASE("contours") {
    const auto single = tree_of({{VType::t1, 0}});
    CHECK(full_contour(single) == std::vector<int>{0});
    CHECK(modified_contour(single) == std::vector<int>{0});
    const auto chain = tree_of({{VType::t1, 1}, {VType::t3, 1}, {VType::t1, 0}});
    CHECK(full_contour(chain) == std::vector<int>{0, 1, 2, 1, 0});
    CHECK(modified_contour(chain) == std::vector<int>{0, 2, 0});

    Rng rng(7);
    const auto laws = offspring_laws(WeightSeq::single(3), tune_critical(WeightSeq::single(3)));
    for (int i = 0; i < 50; ++i) {
        const auto t = sample_conditioned(laws, RootKind::single, 2 + static_cast<int>(rng.below(40)), rng,
                                          {ConditioningMethod::cyclic})
                           .tree;
        const auto c = full_contour(t);
        std::vector<int> seen(t.size(), 0);
        for (int v : c) ++seen[v];
        for (int v = 0; v < t.size(); ++v) CHECK(seen[v] == t.child_count(v) + 1);
    }
}

TEST_CASE("shuffle") {
    const auto t = tree_of({{VType::t1, 1}, {VType::t3, 2}, {VType::t1, 0}, {VType::t1, 1}, {VType::t3, 0}});
    const auto id = shuffle_with_coins(t, std::vector<char>(t.size(), 0));
    CHECK(id.tree == t);
    for (int v = 0; v < t.size(); ++v) CHECK(id.sigma[v] == v);

    std::vector<char> coins(t.size(), 0);
    coins[1] = 1;
    const auto rev = shuffle_with_coins(t, coins);
    // subtrees (A, B) = ({2}, {3, 4}) become (B, A)
    CHECK(rev.tree.child_count(2) == 1);
    CHECK(rev.tree.child_count(4) == 0);
    CHECK(rev.sigma[2] == 4);
    CHECK(rev.sigma[3] == 2);

    Rng rng(8);
    const auto laws = offspring_laws(WeightSeq::single(3), tune_critical(WeightSeq::single(3)));
    for (int i = 0; i < 30; ++i) {
        const auto tr = sample_conditioned(laws, RootKind::single, 30, rng, {ConditioningMethod::cyclic}).tree;
        const Mobile m = sample_labels_uniform(tr, rng);
        const auto s = shuffle(tr, rng);
        const auto mm = transport(m, s);
        CHECK(validate(mm).empty());
        for (int u = 0; u < tr.size(); u += 3)
            for (int v = 0; v < tr.size(); v += 2) {
                CHECK(tr.is_ancestor(u, v) == s.tree.is_ancestor(s.sigma[u], s.sigma[v]));
                if (is_even_type(tr.type(u)) && is_even_type(tr.type(v)))
                    CHECK(path_label_min(m, u, v) == path_label_min(mm, s.sigma[u], s.sigma[v]));
            }
    }
}

TEST_CASE("admissible counts match enumeration") {
    for (int k = 0; k <= 6; ++k) {
        const std::vector<VType> ones(k, VType::t1);
        CHECK(admissible_count(VType::t1, ones) == std::to_string(enumerate_admissible(VType::t1, ones)));
        CHECK(admissible_count(VType::t2, ones) == std::to_string(enumerate_admissible(VType::t2, ones)));
    }
    const std::vector<VType> mixed{VType::t2, VType::t1, VType::t2, VType::t1};
    CHECK(admissible_count(VType::t1, mixed) == std::to_string(enumerate_admissible(VType::t1, mixed)));
    CHECK(admissible_count(VType::t1, {}) == "1");
}

TEST_CASE("uniform labels on a single odd vertex") {
    Rng rng(9);
    const int draws = 300000;
    {
        const auto m = one_odd_vertex(VType::t1, {VType::t1});
        std::map<int, int> freq;
        for (int i = 0; i < draws; ++i) ++freq[sample_labels_uniform(m.tree, rng).labels[2]];
        REQUIRE(freq.size() == 3);
        for (int l = -1; l <= 1; ++l) {
            const double p = freq[l] / static_cast<double>(draws);
            CHECK(std::abs(p - 1.0 / 3) < 4 * std::sqrt(2.0 / 9 / draws));
        }
    }
    {
        const auto m = one_odd_vertex(VType::t1, {VType::t2});
        std::map<int, int> freq;
        for (int i = 0; i < draws; ++i) ++freq[sample_labels_uniform(m.tree, rng).labels[2]];
        REQUIRE(freq.size() == 2);
        CHECK(std::abs(freq[0] / static_cast<double>(draws) - 0.5) < 4 * std::sqrt(0.25 / draws));
    }
}

TEST_CASE("increments are centred after the type-2 half shift and shuffling") {
    // The children order of a Galton-Watson tree is exchangeable, so the input
    // order is a uniform arrangement; results are grouped by the shuffled pattern.
    Rng rng(10);
    const int draws = 1000000;
    for (const auto& kids : std::vector<std::vector<VType>>{
             {VType::t1, VType::t2}, {VType::t2, VType::t1, VType::t1}, {VType::t1, VType::t1, VType::t2}}) {
        std::vector<Mobile> arrangements;
        auto order = kids;
        std::sort(order.begin(), order.end());
        do arrangements.push_back(one_odd_vertex(VType::t1, order));
        while (std::next_permutation(order.begin(), order.end()));
        const int odd = 1;
        const int k = static_cast<int>(kids.size());
        struct Acc {
            std::vector<double> sum, sum2;
            int n = 0;
        };
        std::map<std::vector<VType>, Acc> by_pattern;
        for (int i = 0; i < draws; ++i) {
            const auto& m = arrangements[rng.below(arrangements.size())];
            const auto lab = sample_labels_uniform(m.tree, rng);
            const auto s = shuffle(m.tree, rng);
            const auto mm = transport(lab, s);
            const auto ch = s.tree.children(odd);
            std::vector<VType> pattern;
            for (int c : ch) pattern.push_back(s.tree.type(c));
            auto& acc = by_pattern[pattern];
            if (acc.sum.empty()) acc.sum.assign(k, 0), acc.sum2.assign(k, 0);
            ++acc.n;
            for (int j = 0; j < k; ++j) {
                const int c = ch[j];
                const double x = mm.labels[c] - (s.tree.type(c) == VType::t2 ? 0.5 : 0.0);
                acc.sum[j] += x;
                acc.sum2[j] += x * x;
            }
        }
        CHECK(by_pattern.size() == arrangements.size());
        for (const auto& [pattern, acc] : by_pattern)
            for (int j = 0; j < k; ++j) {
                const double mean = acc.sum[j] / acc.n;
                const double se = std::sqrt((acc.sum2[j] / acc.n - mean * mean) / acc.n);
                CHECK(std::abs(mean) < 3 * se);
            }
    }
}

TEST_CASE("mobile text round trip") {
    Rng rng(11);
    const auto laws = offspring_laws(WeightSeq::single(3), tune_critical(WeightSeq::single(3)));
    const auto tr = sample_conditioned(laws, RootKind::single, 50, rng, {ConditioningMethod::cyclic}).tree;
    const auto m = sample_labels_uniform(tr, rng);
    std::stringstream ss;
    write_mobile(ss, m);
    const auto back = read_mobile(ss);
    CHECK(back.tree == m.tree);
    CHECK(back.labels == m.labels);
}
