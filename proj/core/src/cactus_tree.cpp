#include "cactus/cactus_tree.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "cactus/errors.hpp"

namespace cactus {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

}  // namespace

CactusTree::CactusTree(std::vector<Node> nodes, std::vector<int> class_of)
    : nodes_(std::move(nodes)), class_of_(std::move(class_of)) {}

int CactusTree::class_of(VertexId v) const {
    if (v < 0 || v >= vertex_count()) throw InputError("unknown vertex id in cactus query");
    return class_of_[v];
}

int CactusTree::lowest_common_ancestor(int a, int b) const {
    while (nodes_[a].height > nodes_[b].height) a = nodes_[a].parent;
    while (nodes_[b].height > nodes_[a].height) b = nodes_[b].parent;
    while (a != b) {
        a = nodes_[a].parent;
        b = nodes_[b].parent;
    }
    return a;
}

int CactusTree::distance_between_classes(int a, int b) const {
    const int c = lowest_common_ancestor(a, b);
    return nodes_[a].height + nodes_[b].height - 2 * nodes_[c].height;
}

CactusTree build_cactus(const PointedGraph& g) {
    const int n = g.size();
    const auto h = graph_distances(g, g.root());
    const int max_h = *std::max_element(h.begin(), h.end());

    std::vector<std::vector<VertexId>> level(max_h + 1);
    for (VertexId v = 0; v < n; ++v) level[h[v]].push_back(v);  // ascending ids

    DisjointSets sets(n);
    std::vector<CactusTree::Node> raw;  // creation order: decreasing height
    std::vector<VertexId> representative;
    std::vector<int> class_of(n, -1);
    std::vector<int> class_of_root(n, -1);
    std::vector<int> previous;  // classes created at height r + 1

    for (int r = max_h; r >= 0; --r) {
        for (VertexId v : level[r])
            for (VertexId w : g.neighbors(v))
                if (h[w] >= r) sets.unite(v, w);

        std::vector<int> created;
        for (VertexId v : level[r]) {
            const int root = sets.find(v);
            if (class_of_root[root] < 0 || raw[class_of_root[root]].height != r) {
                class_of_root[root] = static_cast<int>(raw.size());
                raw.push_back({r, -1});
                representative.push_back(v);
                created.push_back(class_of_root[root]);
            }
            class_of[v] = class_of_root[root];
        }
        for (int c : previous) {
            const int root = sets.find(representative[c]);
            const int parent = class_of_root[root];
            if (parent < 0 || raw[parent].height != r) throw InternalError("cactus sweep lost a parent class");
            raw[c].parent = parent;
        }
        previous = std::move(created);
    }

    // Renumber by (height, smallest member) so the root class is 0.
    std::vector<int> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<VertexId> smallest(raw.size(), n);
    for (VertexId v = 0; v < n; ++v) smallest[class_of[v]] = std::min(smallest[class_of[v]], v);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (raw[a].height != raw[b].height) return raw[a].height < raw[b].height;
        return smallest[a] < smallest[b];
    });
    std::vector<int> new_id(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = static_cast<int>(i);
    std::vector<CactusTree::Node> nodes(raw.size());
    for (std::size_t c = 0; c < raw.size(); ++c)
        nodes[new_id[c]] = {raw[c].height, raw[c].parent < 0 ? -1 : new_id[raw[c].parent]};
    for (auto& c : class_of) c = new_id[c];
    return CactusTree(std::move(nodes), std::move(class_of));
}

int cactus_distance(const CactusTree& t, VertexId v, VertexId w) {
    return t.distance_between_classes(t.class_of(v), t.class_of(w));
}

void write_cactus(std::ostream& out, const CactusTree& t) {
    for (int c = 0; c < t.class_count(); ++c)
        out << c << ' ' << t.node(c).height << ' ' << t.node(c).parent << '\n';
    for (VertexId v = 0; v < t.vertex_count(); ++v) out << v << ' ' << t.class_of(v) << '\n';
}

}  // namespace cactus
