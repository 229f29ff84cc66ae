#include "cactus/bdg.hpp"

#include <algorithm>

#include "cactus/errors.hpp"

namespace cactus {

Variant parse_variant(const std::string& s) {
    if (s == "pos" || s == "positive") return Variant::positive;
    if (s == "neg" || s == "negative") return Variant::negative;
    if (s == "null") return Variant::null;
    throw InputError("variant must be pos, neg or null");
}

std::vector<int> corner_successors(const Mobile& m) {
    const auto u = modified_contour(m.tree);
    const int p = static_cast<int>(u.size()) - 1;
    std::vector<int> succ(p, -1);
    if (p == 0) return succ;
    int lo = m.labels[u[0]], hi = lo;
    for (int i = 0; i < p; ++i) {
        lo = std::min(lo, m.labels[u[i]]);
        hi = std::max(hi, m.labels[u[i]]);
    }
    // Scan the doubled contour backwards, remembering the nearest later
    // position of every label value.
    std::vector<int> nearest(hi - lo + 1, -1);
    for (int idx = 2 * p - 1; idx >= 0; --idx) {
        const int label = m.labels[u[idx % p]];
        if (idx < p && label > lo) {
            const int j = nearest[label - 1 - lo];
            if (j < 0 || j >= idx + p) throw InternalError("successor corner missing");
            succ[idx] = j % p;
        }
        nearest[label - lo] = idx;
    }
    return succ;
}

BdgMap mobile_to_map(const Mobile& m, Variant variant) {
    if (auto bad = validate(m); !bad.empty())
        throw InputError("invalid mobile at vertex " + std::to_string(bad.front().vertex) + ": " + bad.front().rule);
    const auto& t = m.tree;
    const bool null_root = t.type(0) == VType::t2;
    if (null_root != (variant == Variant::null))
        throw InputError("root type 2 goes with the null variant, root type 1 with positive/negative");

    BdgMap out;
    out.map_vertex.assign(t.size(), -1);
    out.face_of_tree_vertex.assign(t.size(), -1);
    if (t.size() == 1) return out;  // the vertex map

    const auto u = modified_contour(t);
    const int p = static_cast<int>(u.size()) - 1;
    const auto succ = corner_successors(m);

    // Corners of each tree vertex, in contour order.
    std::vector<int> corner_begin(t.size() + 1, 0);
    for (int i = 0; i < p; ++i) ++corner_begin[u[i] + 1];
    for (int v = 0; v < t.size(); ++v) corner_begin[v + 1] += corner_begin[v];
    std::vector<int> corners(p);
    {
        auto fill = corner_begin;
        for (int i = 0; i < p; ++i) corners[fill[u[i]]++] = i;
    }
    // Chords arriving at each corner, in increasing source order.
    std::vector<int> in_begin(p + 1, 0);
    for (int i = 0; i < p; ++i)
        if (succ[i] >= 0) ++in_begin[succ[i] + 1];
    for (int c = 0; c < p; ++c) in_begin[c + 1] += in_begin[c];
    std::vector<int> incoming(in_begin[p]);
    {
        auto fill = in_begin;
        for (int i = 0; i < p; ++i)
            if (succ[i] >= 0) incoming[fill[succ[i]]++] = i;
    }

    // Chord i owns half-edges 2i (at corner i) and 2i + 1 (at its target).
    const int h_count = 2 * p;
    std::vector<int> opposite(h_count), next(h_count, -1);
    for (int i = 0; i < p; ++i) {
        opposite[2 * i] = 2 * i + 1;
        opposite[2 * i + 1] = 2 * i;
    }
    auto offset = [p](int from, int to) { return ((to - from) % p + p) % p; };

    std::vector<std::pair<int, int>> at_corner;
    std::vector<int> ring;
    auto close_ring = [&]() {
        for (std::size_t k = 0; k < ring.size(); ++k) next[ring[k]] = ring[(k + 1) % ring.size()];
    };
    for (int w = 0; w < t.size(); ++w) {
        if (t.depth(w) % 2 == 1) continue;
        // Counterclockwise: corners in decreasing contour order, chords inside
        // a corner by increasing cyclic offset of their other end.
        ring.clear();
        for (int k = corner_begin[w + 1] - 1; k >= corner_begin[w]; --k) {
            const int c = corners[k];
            at_corner.clear();
            at_corner.emplace_back(succ[c] < 0 ? 0 : offset(c, succ[c]), 2 * c);
            for (int s = in_begin[c]; s < in_begin[c + 1]; ++s)
                at_corner.emplace_back(offset(c, incoming[s]), 2 * incoming[s] + 1);
            std::sort(at_corner.begin(), at_corner.end());
            for (auto [off, h] : at_corner) ring.push_back(h);
        }
        close_ring();
    }
    ring.clear();
    for (int i = 0; i < p; ++i)
        if (succ[i] < 0) ring.push_back(2 * i + 1);
    close_ring();

    // Splice out type-2 vertices.
    std::vector<char> alive(h_count, 1);
    auto target_vertex = [&](int corner) { return succ[corner] < 0 ? -1 : u[succ[corner]]; };
    for (int w = 0; w < t.size(); ++w) {
        if (t.type(w) != VType::t2) continue;
        if (corner_begin[w + 1] - corner_begin[w] != 2) throw InternalError("type-2 vertex without two corners");
        const int c1 = corners[corner_begin[w]], c2 = corners[corner_begin[w] + 1];
        if (in_begin[c1 + 1] != in_begin[c1] || in_begin[c2 + 1] != in_begin[c2])
            throw InternalError("chord ends at a type-2 corner");
        const int g1 = 2 * c1 + 1, g2 = 2 * c2 + 1;
        opposite[g1] = g2;
        opposite[g2] = g1;
        alive[2 * c1] = alive[2 * c2] = 0;
        out.type2_ends.push_back({w, {target_vertex(c1), target_vertex(c2)}});
    }

    HalfEdge root_old = 0;
    switch (variant) {
        case Variant::positive: root_old = 1; break;  // e+ is the root vertex
        case Variant::negative: root_old = 0; break;
        case Variant::null: root_old = 1; break;  // chord from the first root corner is the origin
    }

    std::vector<int> new_id(h_count, -1);
    int n_alive = 0;
    for (int h = 0; h < h_count; ++h)
        if (alive[h]) new_id[h] = n_alive++;
    std::vector<HalfEdge> opp2(n_alive), next2(n_alive);
    for (int h = 0; h < h_count; ++h) {
        if (!alive[h]) continue;
        opp2[new_id[h]] = new_id[opposite[h]];
        int n = next[h];
        while (!alive[n]) n = next[n];
        next2[new_id[h]] = new_id[n];
    }

    // Vertex ids follow from the permutation: find them before fixing the pointed vertex.
    int rho_half = -1;
    for (int i = 0; i < p && rho_half < 0; ++i)
        if (succ[i] < 0) rho_half = new_id[2 * i + 1];
    CombinatorialMap provisional;
    try {
        provisional = CombinatorialMap(opp2, next2, new_id[root_old], 0);
    } catch (const InputError& e) {
        throw InternalError(std::string("constructed map rejected: ") + e.what());
    }
    out.rho = provisional.origin(rho_half);
    out.map = CombinatorialMap(std::move(opp2), std::move(next2), new_id[root_old], out.rho);

    for (int w = 0; w < t.size(); ++w)
        if (t.type(w) == VType::t1) out.map_vertex[w] = out.map.origin(new_id[2 * corners[corner_begin[w]]]);

    // Faces: the odd corner after even corner i lies in the face of the
    // sector just before corner i's own chord.
    const auto face_of = face_of_half_edges(out.map);
    const auto contour = full_contour(t);
    for (int i = 0; i < p; ++i) {
        const int x = contour[2 * i + 1];
        int h = 2 * i;
        if (!alive[h]) {
            const int w = u[i];
            const int other = corners[corner_begin[w]] == i ? corners[corner_begin[w] + 1] : corners[corner_begin[w]];
            h = 2 * other + 1;
        }
        const int f = face_of[new_id[h]];
        if (out.face_of_tree_vertex[x] >= 0 && out.face_of_tree_vertex[x] != f)
            throw InternalError("odd vertex spread over several faces");
        out.face_of_tree_vertex[x] = f;
    }
    return out;
}

bool verify_distance_identity(const BdgMap& b, const Mobile& m) {
    if (b.map.is_vertex_map()) return true;
    const auto d = graph_distances(b.map.underlying_graph(), b.rho);
    const int lo = m.min_label();
    for (int w = 0; w < m.tree.size(); ++w) {
        if (m.tree.type(w) != VType::t1) continue;
        if (b.map_vertex[w] < 0) throw InputError("vertex correspondence missing");
        if (d[b.map_vertex[w]] != m.labels[w] - lo + 1) return false;
    }
    return true;
}

std::string check_face_bookkeeping(const BdgMap& b, const Mobile& m) {
    const auto& t = m.tree;
    const auto fs = faces(b.map);
    if (b.map.is_vertex_map()) return fs.size() == 1 && fs[0].degree == 0 ? "" : "vertex map must have one face";
    std::vector<int> owner(fs.size(), -1);
    for (int x = 0; x < t.size(); ++x) {
        if (t.depth(x) % 2 == 0) continue;
        const int f = b.face_of_tree_vertex[x];
        if (f < 0) return "odd vertex " + std::to_string(x) + " has no face";
        if (owner[f] >= 0) return "face " + std::to_string(f) + " holds two odd vertices";
        owner[f] = x;
        int k = 0, k2 = 0;
        for (int c : t.children(x)) (t.type(c) == VType::t1 ? k : k2) += 1;
        const int want = (t.type(x) == VType::t3 ? 2 : 1) + 2 * k + k2;
        if (fs[f].degree != want)
            return "face of vertex " + std::to_string(x) + " has degree " + std::to_string(fs[f].degree) +
                   ", expected " + std::to_string(want);
    }
    for (std::size_t f = 0; f < fs.size(); ++f)
        if (owner[f] < 0) return "face " + std::to_string(f) + " holds no odd vertex";
    return "";
}

int path_label_min(const Mobile& m, int u, int v) {
    const auto& t = m.tree;
    int best = std::min(m.labels[u], m.labels[v]);
    auto visit = [&](int w) {
        if (t.depth(w) % 2 == 0) best = std::min(best, m.labels[w]);
    };
    while (t.depth(u) > t.depth(v)) visit(u = t.parent(u));
    while (t.depth(v) > t.depth(u)) visit(v = t.parent(v));
    while (u != v) {
        visit(u = t.parent(u));
        visit(v = t.parent(v));
    }
    return best;
}

}  // namespace cactus
