#pragma once

#include <utility>
#include <vector>

#include "cactus/cactus_tree.hpp"
#include "cactus/graph.hpp"

namespace cactus {

// Finite pointed metric space given by its distance matrix.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;
    // Throws InputError unless the matrix is square, symmetric, zero on the
    // diagonal, nonnegative and satisfies the triangle inequality (tol 1e-9).
    FiniteMetricSpace(std::vector<std::vector<double>> dist, int root);

    int size() const { return static_cast<int>(dist_.size()); }
    int root() const { return root_; }
    double operator()(int i, int j) const { return dist_[i][j]; }

private:
    std::vector<std::vector<double>> dist_;
    int root_ = 0;
};

using Correspondence = std::vector<std::pair<int, int>>;

FiniteMetricSpace metric_of_graph(const PointedGraph& g);
// Vertices of g with the cactus pseudo-distance, quotiented to classes.
FiniteMetricSpace metric_of_cactus(const CactusTree& t);

// max |d_A(a1,a2) - d_B(b1,b2)| over pairs of pairs. Throws InputError if r
// misses the root pair or fails to cover either side.
double distortion(const Correspondence& r, const FiniteMetricSpace& a, const FiniteMetricSpace& b);

inline constexpr int kGhMaxProduct = 20;

// Half the least distortion over all correspondences containing the root pair.
// Exhaustive; throws InputError when size(a) * size(b) > kGhMaxProduct.
double gh_exact_small(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

}  // namespace cactus
