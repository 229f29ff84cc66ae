#include "cactus/planar_map.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "cactus/errors.hpp"

namespace cactus {

const char* to_string(MapClass c) {
    switch (c) {
        case MapClass::positive: return "positive";
        case MapClass::negative: return "negative";
        case MapClass::null: return "null";
    }
    return "?";
}

CombinatorialMap::CombinatorialMap(std::vector<HalfEdge> opposite, std::vector<HalfEdge> next_at_vertex,
                                   HalfEdge root, int pointed_vertex)
    : opposite_(std::move(opposite)), next_(std::move(next_at_vertex)), root_(root), pointed_(pointed_vertex) {
    const int h_count = half_edge_count();
    if (static_cast<int>(next_.size()) != h_count) throw InputError("permutation tables differ in length");
    if (h_count % 2 != 0) throw InputError("odd number of half-edges");
    if (h_count == 0) {
        root_ = -1;
        if (pointed_ != 0) throw InputError("vertex map has a single vertex 0");
        vertex_count_ = 1;
        return;
    }
    std::vector<char> hit(h_count, 0);
    for (HalfEdge h = 0; h < h_count; ++h) {
        const HalfEdge o = opposite_[h];
        if (o < 0 || o >= h_count || o == h || opposite_[o] != h) throw InputError("opposite is not a fixed-point-free involution");
        const HalfEdge n = next_[h];
        if (n < 0 || n >= h_count || hit[n]) throw InputError("next_at_vertex is not a permutation");
        hit[n] = 1;
    }
    if (root_ < 0 || root_ >= h_count) throw InputError("root half-edge out of range");

    vertex_of_.assign(h_count, -1);
    vertex_count_ = 0;
    for (HalfEdge h = 0; h < h_count; ++h) {
        if (vertex_of_[h] >= 0) continue;
        HalfEdge g = h;
        do {
            vertex_of_[g] = vertex_count_;
            g = next_[g];
        } while (g != h);
        ++vertex_count_;
    }
    if (pointed_ < 0 || pointed_ >= vertex_count_) throw InputError("pointed vertex out of range");

    // Connectivity over vertices through edges.
    std::vector<char> reached(vertex_count_, 0);
    std::vector<int> stack{vertex_of_[0]};
    reached[vertex_of_[0]] = 1;
    std::vector<std::vector<HalfEdge>> around(vertex_count_);
    for (HalfEdge h = 0; h < h_count; ++h) around[vertex_of_[h]].push_back(h);
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (HalfEdge h : around[v]) {
            const int w = vertex_of_[opposite_[h]];
            if (!reached[w]) {
                reached[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != vertex_count_) throw InputError("map is not connected");
    if (!euler_holds(*this)) throw InputError("Euler formula V - E + F = 2 violated");
}

int CombinatorialMap::face_count() const {
    if (is_vertex_map()) return 1;
    const int h_count = half_edge_count();
    std::vector<char> seen(h_count, 0);
    int f = 0;
    for (HalfEdge h = 0; h < h_count; ++h) {
        if (seen[h]) continue;
        ++f;
        HalfEdge g = h;
        do {
            seen[g] = 1;
            g = next_[opposite_[g]];
        } while (g != h);
    }
    return f;
}

int CombinatorialMap::root_tail() const { return is_vertex_map() ? 0 : vertex_of_[root_]; }
int CombinatorialMap::root_head() const { return is_vertex_map() ? 0 : vertex_of_[opposite_[root_]]; }

PointedGraph CombinatorialMap::underlying_graph() const {
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(edge_count());
    for (HalfEdge h = 0; h < half_edge_count(); ++h)
        if (h < opposite_[h]) edges.emplace_back(vertex_of_[h], vertex_of_[opposite_[h]]);
    return PointedGraph(vertex_count_, edges, pointed_);
}

std::vector<int> face_of_half_edges(const CombinatorialMap& m) {
    const int h_count = m.half_edge_count();
    std::vector<int> face(h_count, -1);
    int f = 0;
    for (HalfEdge h = 0; h < h_count; ++h) {
        if (face[h] >= 0) continue;
        HalfEdge g = h;
        do {
            face[g] = f;
            g = m.next_at_vertex(m.opposite(g));
        } while (g != h);
        ++f;
    }
    return face;
}

std::vector<Face> faces(const CombinatorialMap& m) {
    if (m.is_vertex_map()) return {Face{0, 0, {}}};
    std::vector<Face> out;
    std::vector<char> seen(m.half_edge_count(), 0);
    for (HalfEdge h = 0; h < m.half_edge_count(); ++h) {
        if (seen[h]) continue;
        Face face{static_cast<int>(out.size()), 0, {}};
        HalfEdge g = h;
        do {
            seen[g] = 1;
            face.cycle.push_back(g);
            g = m.next_at_vertex(m.opposite(g));
        } while (g != h);
        face.degree = static_cast<int>(face.cycle.size());
        out.push_back(std::move(face));
    }
    return out;
}

bool euler_holds(const CombinatorialMap& m) {
    return m.vertex_count() - m.edge_count() + m.face_count() == 2;
}

MapClass classify(const CombinatorialMap& m) {
    if (m.is_vertex_map()) return MapClass::positive;
    const auto d = graph_distances(m.underlying_graph(), m.pointed_vertex());
    const int plus = d[m.root_head()], minus = d[m.root_tail()];
    if (plus == minus + 1) return MapClass::positive;
    if (minus == plus + 1) return MapClass::negative;
    return MapClass::null;
}

void write_map(std::ostream& out, const CombinatorialMap& m) {
    out << m.half_edge_count() << ' ' << m.root_half_edge() << ' ' << m.pointed_vertex() << '\n';
    for (int h = 0; h < m.half_edge_count(); ++h) out << (h ? " " : "") << m.opposite(h);
    out << '\n';
    for (int h = 0; h < m.half_edge_count(); ++h) out << (h ? " " : "") << m.next_at_vertex(h);
    out << '\n';
}

CombinatorialMap read_map(std::istream& in) {
    long long h_count = 0, root = 0, pointed = 0;
    if (!(in >> h_count >> root >> pointed)) throw InputError("map header must be `H root_half_edge pointed_vertex`");
    if (h_count < 0 || h_count > (1LL << 30)) throw InputError("bad half-edge count");
    std::vector<HalfEdge> opposite(h_count), next(h_count);
    for (auto& o : opposite)
        if (!(in >> o)) throw InputError("truncated opposite table");
    for (auto& n : next)
        if (!(in >> n)) throw InputError("truncated next_at_vertex table");
    if (h_count == 0) return CombinatorialMap(std::move(opposite), std::move(next), -1, static_cast<int>(pointed));
    return CombinatorialMap(std::move(opposite), std::move(next), static_cast<int>(root), static_cast<int>(pointed));
}

std::string encode(const CombinatorialMap& m) {
    std::ostringstream out;
    write_map(out, m);
    return out.str();
}

CombinatorialMap decode(const std::string& text) {
    std::istringstream in(text);
    return read_map(in);
}

}  // namespace cactus
