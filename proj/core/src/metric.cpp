#include "cactus/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "cactus/errors.hpp"

namespace cactus {

namespace {
constexpr double kTol = 1e-9;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> dist, int root)
    : dist_(std::move(dist)), root_(root) {
    const int n = size();
    if (n == 0) throw InputError("metric space must be non-empty");
    if (root < 0 || root >= n) throw InputError("metric root out of range");
    for (const auto& row : dist_)
        if (static_cast<int>(row.size()) != n) throw InputError("distance matrix is not square");
    for (int i = 0; i < n; ++i) {
        if (std::abs(dist_[i][i]) > kTol) throw InputError("nonzero diagonal entry");
        for (int j = 0; j < n; ++j) {
            if (dist_[i][j] < -kTol) throw InputError("negative distance");
            if (std::abs(dist_[i][j] - dist_[j][i]) > kTol) throw InputError("asymmetric distance matrix");
            for (int k = 0; k < n; ++k)
                if (dist_[i][k] > dist_[i][j] + dist_[j][k] + kTol) throw InputError("triangle inequality violated");
        }
    }
}

FiniteMetricSpace metric_of_graph(const PointedGraph& g) {
    std::vector<std::vector<double>> d(g.size());
    for (VertexId v = 0; v < g.size(); ++v) {
        const auto row = graph_distances(g, v);
        d[v].assign(row.begin(), row.end());
    }
    return FiniteMetricSpace(std::move(d), g.root());
}

FiniteMetricSpace metric_of_cactus(const CactusTree& t) {
    const int n = t.class_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d[a][b] = t.distance_between_classes(a, b);
    return FiniteMetricSpace(std::move(d), 0);  // class 0 holds the root
}

double distortion(const Correspondence& r, const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    std::vector<char> seen_a(a.size(), 0), seen_b(b.size(), 0);
    bool has_root = false;
    for (auto [i, j] : r) {
        if (i < 0 || i >= a.size() || j < 0 || j >= b.size()) throw InputError("correspondence index out of range");
        seen_a[i] = seen_b[j] = 1;
        has_root = has_root || (i == a.root() && j == b.root());
    }
    if (!has_root) throw InputError("correspondence misses the root pair");
    if (std::count(seen_a.begin(), seen_a.end(), 0) || std::count(seen_b.begin(), seen_b.end(), 0))
        throw InputError("correspondence does not cover both spaces");
    double worst = 0.0;
    for (auto [i1, j1] : r)
        for (auto [i2, j2] : r) worst = std::max(worst, std::abs(a(i1, i2) - b(j1, j2)));
    return worst;
}

double gh_exact_small(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    const int na = a.size(), nb = b.size();
    if (na * nb > kGhMaxProduct) throw InputError("instance too large for exhaustive Gromov-Hausdorff");
    const int cells = na * nb;
    const int root_cell = a.root() * nb + b.root();
    const std::uint32_t full_a = (1u << na) - 1, full_b = (1u << nb) - 1;

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> pairs;
    for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
        if (!(mask >> root_cell & 1u)) continue;
        std::uint32_t cover_a = 0, cover_b = 0;
        pairs.clear();
        for (int c = 0; c < cells; ++c)
            if (mask >> c & 1u) {
                cover_a |= 1u << (c / nb);
                cover_b |= 1u << (c % nb);
                pairs.emplace_back(c / nb, c % nb);
            }
        if (cover_a != full_a || cover_b != full_b) continue;
        double worst = 0.0;
        for (std::size_t p = 0; p < pairs.size() && worst < best; ++p)
            for (std::size_t s = p + 1; s < pairs.size(); ++s)
                worst = std::max(worst, std::abs(a(pairs[p].first, pairs[s].first) - b(pairs[p].second, pairs[s].second)));
        best = std::min(best, worst);
    }
    return best / 2.0;
}

}  // namespace cactus
