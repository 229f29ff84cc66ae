#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "cactus/rng.hpp"

namespace cactus {

// How labels vary along an edge. `vertex`: only vertex values count.
// `bridge`: each edge carries an independent Brownian bridge between its end
// labels, and path minima include the bridge minima.
enum class LabelMode { vertex, bridge };

// Plane tree with N edges and Gaussian labels (unit variance per edge).
// Vertices are numbered in preorder, root 0.
class LabeledTree {
public:
    LabeledTree() = default;
    // parents[0] = -1 and parents[v] < v (preorder). Labels are unscaled.
    // In bridge mode `edge_minima[v]` is the minimum on the edge above v.
    LabeledTree(std::vector<int> parents, std::vector<double> labels, LabelMode mode = LabelMode::vertex,
                std::vector<double> edge_minima = {});

    int size() const { return static_cast<int>(parent_.size()); }
    int edges() const { return size() - 1; }
    LabelMode mode() const { return mode_; }
    int parent(int v) const { return parent_[v]; }
    int depth(int v) const { return depth_[v]; }
    double label(int v) const { return label_[v]; }
    // Minimum of the labels on the edge (parent(v), v); v > 0.
    double edge_min(int v) const;
    int subtree_size(int v) const { return subtree_size_[v]; }
    bool is_ancestor(int a, int v) const { return a <= v && v < a + subtree_size_[a]; }
    std::span<const int> children(int v) const {
        return {kids_.data() + kid_begin_[v], static_cast<std::size_t>(kid_begin_[v + 1] - kid_begin_[v])};
    }
    // Vertices visited by the contour, 2N + 1 entries starting and ending at the root.
    const std::vector<int>& contour() const { return contour_; }

    // Distances are shown times (2N)^(-1/2), labels times (2N)^(-1/4).
    double label_scale() const;
    double distance_scale() const;

private:
    std::vector<int> parent_;
    std::vector<int> depth_;
    std::vector<double> label_;
    std::vector<double> edge_min_;
    std::vector<int> subtree_size_;
    std::vector<int> kid_begin_;
    std::vector<int> kids_;
    std::vector<int> contour_;
    LabelMode mode_ = LabelMode::vertex;
};

// Uniform plane tree with N edges (cycle lemma on a shuffled +-1 sequence)
// with independent standard normal increments along edges.
LabeledTree sample_labeled_tree(int edges, Rng& rng, LabelMode mode = LabelMode::vertex);

// Unscaled minimum label on the tree path [[u, v]], endpoints included.
double path_min(const LabeledTree& t, int u, int v);
// Scaled Z_u + Z_v - 2 min over [[u, v]].
double kac_distance(const LabeledTree& t, int u, int v);
// Vertex of smallest label (smallest preorder id on ties).
int min_label_vertex(const LabeledTree& t);
// Unscaled minimum over the whole tree (edge minima included in bridge mode).
double global_min(const LabeledTree& t);
// Scaled Z_v - global minimum.
double distance_to_min(const LabeledTree& t, int v);

// Vertex seen at a uniform contour step; vertex v has mass deg(v) / 2N.
int sample_mass_vertex(const LabeledTree& t, Rng& rng);

struct VolumeSplit {
    double vol1 = 0;
    double vol2 = 0;
};

// Volumes of the two sides of the label minimum on the path between two
// independent mass vertices. Bridge mode cuts the edge holding the minimum.
// Vertex mode removes the argmin vertex; its mass and any side branches
// hanging from it are split half-half. Throws InputError for trees with
// fewer than 4 edges.
VolumeSplit separating_split(const LabeledTree& t, Rng& rng);

// Length of the contour excursion above level height(s) - H that straddles a
// uniform time s, with H arc-sine distributed on [0, height(s)]; as a
// fraction of the total contour length. Labels are not used.
double arc_sine_split_oracle(const LabeledTree& t, Rng& rng);

// Mass of the d_KAC balls around `center` for each radius (scaled units).
std::vector<double> ball_masses(const LabeledTree& t, int center, std::span<const double> radii);

// Same for a uniform point of the metric tree: unit-length edges carrying
// independent Brownian bridges between their end labels, with Lebesgue
// measure. Bridges are drawn afresh on each call (stored edge minima are not
// used); each edge is resolved into `pieces` midpoint cells.
std::vector<double> continuum_ball_masses(const LabeledTree& t, Rng& rng, std::span<const double> radii,
                                          int pieces = 4);

void write_tree_summary(std::ostream& out, const LabeledTree& t);

}  // namespace cactus
