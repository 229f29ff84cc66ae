#pragma once

#include <utility>
#include <vector>

#include "cactus/graph.hpp"
#include "cactus/rng.hpp"

namespace cactus::testing {

// Random connected graph: a random spanning tree plus extra edges with
// probability `density`. Root uniform.
inline PointedGraph random_connected_graph(Rng& rng, int n, double density) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.below(v)), v);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(density)) edges.emplace_back(u, v);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    for (auto& [u, v] : edges) u = perm[u], v = perm[v];
    return PointedGraph(n, edges, static_cast<int>(rng.below(n)));
}

}  // namespace cactus::testing
