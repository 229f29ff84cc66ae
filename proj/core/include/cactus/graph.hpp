#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cactus {

using VertexId = int;

// Finite connected simple graph with a distinguished root vertex.
class PointedGraph {
public:
    PointedGraph() = default;
    // Duplicate pairs are collapsed and loops dropped. Throws InputError on
    // out-of-range ids or if the graph is not connected.
    PointedGraph(int n_vertices, const std::vector<std::pair<VertexId, VertexId>>& edges, VertexId root);

    int size() const { return static_cast<int>(adjacency_.size()); }
    VertexId root() const { return root_; }
    const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
    const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
    bool valid(VertexId v) const { return v >= 0 && v < size(); }

private:
    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<std::pair<VertexId, VertexId>> edges_;  // u < v, sorted
    VertexId root_ = 0;
};

// Breadth-first distances from `source`.
std::vector<int> graph_distances(const PointedGraph& g, VertexId source);

// max over paths v -> w of the min root distance along the path. Cubic test oracle.
int maximin_oracle(const PointedGraph& g, VertexId v, VertexId w);

// All-pairs maximin table from the same dynamic program, for oracle sweeps.
std::vector<std::vector<int>> maximin_table(const PointedGraph& g);

// Text format: `n m root` then m lines `u v`.
PointedGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const PointedGraph& g);

}  // namespace cactus
