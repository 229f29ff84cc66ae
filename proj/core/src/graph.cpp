#include "cactus/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>

#include "cactus/errors.hpp"

namespace cactus {

PointedGraph::PointedGraph(int n_vertices, const std::vector<std::pair<VertexId, VertexId>>& edges, VertexId root)
    : adjacency_(n_vertices > 0 ? n_vertices : 0), root_(root) {
    if (n_vertices <= 0) throw InputError("graph must have at least one vertex");
    if (root < 0 || root >= n_vertices) throw InputError("root id out of range");
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices)
            throw InputError("edge endpoint out of range");
        if (u == v) continue;
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

    const auto d = graph_distances(*this, root_);
    (void)d;  // throws if disconnected
}

std::vector<int> graph_distances(const PointedGraph& g, VertexId source) {
    if (!g.valid(source)) throw InputError("invalid source vertex");
    std::vector<int> dist(g.size(), -1);
    std::vector<VertexId> queue;
    queue.reserve(g.size());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId u = queue[head];
        for (VertexId w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if (static_cast<int>(queue.size()) != g.size()) throw InputError("graph is not connected");
    return dist;
}

std::vector<std::vector<int>> maximin_table(const PointedGraph& g) {
    const int n = g.size();
    const auto h = graph_distances(g, g.root());
    constexpr int kNone = std::numeric_limits<int>::min();
    std::vector<std::vector<int>> w(n, std::vector<int>(n, kNone));
    for (int v = 0; v < n; ++v) w[v][v] = h[v];
    for (auto [u, v] : g.edges()) w[u][v] = w[v][u] = std::min(h[u], h[v]);
    // Widest-path closure with vertex bottlenecks.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (w[i][k] == kNone) continue;
            for (int j = 0; j < n; ++j) {
                if (w[k][j] == kNone) continue;
                w[i][j] = std::max(w[i][j], std::min(w[i][k], w[k][j]));
            }
        }
    return w;
}

int maximin_oracle(const PointedGraph& g, VertexId v, VertexId w) {
    if (!g.valid(v) || !g.valid(w)) throw InputError("invalid vertex id");
    return maximin_table(g)[v][w];
}

PointedGraph read_graph(std::istream& in) {
    long long n = 0, m = 0, root = 0;
    if (!(in >> n >> m >> root)) throw InputError("graph header must be `n m root`");
    if (n <= 0 || m < 0 || n > std::numeric_limits<int>::max()) throw InputError("bad graph header");
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        if (!(in >> u >> v)) throw InputError("truncated edge list");
        if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return PointedGraph(static_cast<int>(n), edges, static_cast<int>(root));
}

void write_graph(std::ostream& out, const PointedGraph& g) {
    out << g.size() << ' ' << g.edges().size() << ' ' << g.root() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace cactus
