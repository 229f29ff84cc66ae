#pragma once

#include <iosfwd>
#include <vector>

#include "cactus/graph.hpp"

namespace cactus {

// Merge tree of the sets {w : d(root, w) >= r}. Vertices in the same class
// are at cactus distance zero.
class CactusTree {
public:
    struct Node {
        int height = 0;
        int parent = -1;  // -1 for the root class
    };

    CactusTree() = default;
    CactusTree(std::vector<Node> nodes, std::vector<int> class_of);

    int class_count() const { return static_cast<int>(nodes_.size()); }
    int vertex_count() const { return static_cast<int>(class_of_.size()); }
    const Node& node(int c) const { return nodes_.at(c); }
    const std::vector<Node>& nodes() const { return nodes_; }
    int class_of(VertexId v) const;
    int height_of(VertexId v) const { return nodes_[class_of(v)].height; }

    int lowest_common_ancestor(int a, int b) const;
    int distance_between_classes(int a, int b) const;

private:
    std::vector<Node> nodes_;
    std::vector<int> class_of_;
};

CactusTree build_cactus(const PointedGraph& g);

// h(C) + h(C') - 2 h(C ^ C')
int cactus_distance(const CactusTree& t, VertexId v, VertexId w);

// One line `id height parent` per class, then one `vertex class` line per vertex.
void write_cactus(std::ostream& out, const CactusTree& t);

}  // namespace cactus
