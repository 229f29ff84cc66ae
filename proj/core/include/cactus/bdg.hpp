#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cactus/mobile.hpp"
#include "cactus/planar_map.hpp"

namespace cactus {

using Variant = MapClass;

Variant parse_variant(const std::string& s);  // pos|neg|null (or full names)

// Map built from a mobile together with the correspondences the checks need.
struct BdgMap {
    CombinatorialMap map;
    int rho = 0;                           // map vertex id of the added vertex
    std::vector<int> map_vertex;           // tree vertex -> map vertex (type 1 only, else -1)
    std::vector<int> face_of_tree_vertex;  // odd tree vertex -> index into faces(map), else -1
    // For each type-2 tree vertex: the two tree vertices its chords reach (-1 for the added vertex).
    std::vector<std::pair<int, std::pair<int, int>>> type2_ends;
};

// Corner chords: target corner of every corner 0..p-1, or -1 for a chord to
// the added vertex.
std::vector<int> corner_successors(const Mobile& m);

// Throws InputError on an invalid mobile or a root type that does not match
// the variant; InternalError if the result fails the Euler check.
BdgMap mobile_to_map(const Mobile& m, Variant variant);

// d(rho, u) = label(u) - min label + 1 for every type-1 vertex u.
bool verify_distance_identity(const BdgMap& b, const Mobile& m);

// Every face holds exactly one odd tree vertex, with degree 2 + 2k + k' for
// type 3 and 1 + 2k + k' for type 4. Returns a description of the first
// failure, or an empty string.
std::string check_face_bookkeeping(const BdgMap& b, const Mobile& m);

// min of labels over the even-generation vertices of the tree path [[u, v]].
int path_label_min(const Mobile& m, int u, int v);

}  // namespace cactus
