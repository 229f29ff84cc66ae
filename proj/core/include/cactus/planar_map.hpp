#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cactus/graph.hpp"

namespace cactus {

using HalfEdge = int;

enum class MapClass { positive, negative, null };

const char* to_string(MapClass c);

struct Face {
    int id = 0;
    int degree = 0;
    std::vector<HalfEdge> cycle;
};

// Rooted pointed planar map as a rotation system. next_at_vertex is the
// counterclockwise successor around the origin of a half-edge; faces are the
// orbits of h -> next_at_vertex(opposite(h)). The root half-edge points from
// e- (its origin) to e+. Vertex ids rank vertex orbits by smallest half-edge.
class CombinatorialMap {
public:
    // The vertex map: no edges, one vertex, one face of degree 0.
    CombinatorialMap() = default;
    // Throws InputError on inconsistent permutations, disconnection or an Euler violation.
    CombinatorialMap(std::vector<HalfEdge> opposite, std::vector<HalfEdge> next_at_vertex, HalfEdge root,
                     int pointed_vertex);

    bool is_vertex_map() const { return opposite_.empty(); }
    int half_edge_count() const { return static_cast<int>(opposite_.size()); }
    int edge_count() const { return half_edge_count() / 2; }
    int vertex_count() const { return vertex_count_; }
    int face_count() const;

    HalfEdge opposite(HalfEdge h) const { return opposite_[h]; }
    HalfEdge next_at_vertex(HalfEdge h) const { return next_[h]; }
    HalfEdge root_half_edge() const { return root_; }
    int pointed_vertex() const { return pointed_; }
    int origin(HalfEdge h) const { return vertex_of_[h]; }
    const std::vector<HalfEdge>& opposite_table() const { return opposite_; }
    const std::vector<HalfEdge>& next_table() const { return next_; }

    int root_tail() const;  // e-
    int root_head() const;  // e+

    // Loops dropped and multi-edges collapsed; root is the pointed vertex.
    PointedGraph underlying_graph() const;

    friend bool operator==(const CombinatorialMap&, const CombinatorialMap&) = default;

private:
    std::vector<HalfEdge> opposite_;
    std::vector<HalfEdge> next_;
    HalfEdge root_ = -1;
    int pointed_ = 0;
    std::vector<int> vertex_of_;
    int vertex_count_ = 1;
};

std::vector<Face> faces(const CombinatorialMap& m);
// Face id containing each half-edge (the face on the sector ending at h).
std::vector<int> face_of_half_edges(const CombinatorialMap& m);
bool euler_holds(const CombinatorialMap& m);
MapClass classify(const CombinatorialMap& m);

// `H root pointed` / opposite table / next_at_vertex table.
std::string encode(const CombinatorialMap& m);
CombinatorialMap decode(const std::string& text);
void write_map(std::ostream& out, const CombinatorialMap& m);
CombinatorialMap read_map(std::istream& in);

}  // namespace cactus
