#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cactus/rng.hpp"

namespace cactus {

// Vertex types of a mobile: 1 and 2 at even generations, 3 and 4 at odd ones.
enum class VType : std::uint8_t { t1 = 1, t2 = 2, t3 = 3, t4 = 4 };

inline int type_number(VType t) { return static_cast<int>(t); }
inline bool is_even_type(VType t) { return t == VType::t1 || t == VType::t2; }

struct PreorderRecord {
    VType type;
    int child_count;
};

// Plane tree with typed vertices, stored in preorder (root = 0). Shape rules
// are not enforced here; validate() reports them.
class FourTypeTree {
public:
    FourTypeTree() = default;
    // Throws InputError if the records do not describe exactly one tree.
    explicit FourTypeTree(std::span<const PreorderRecord> records);
    // Children lists in any vertex numbering; renumbered to preorder.
    static FourTypeTree from_children(const std::vector<VType>& types, const std::vector<std::vector<int>>& children,
                                      int root);

    int size() const { return static_cast<int>(type_.size()); }
    VType type(int v) const { return type_[v]; }
    int parent(int v) const { return parent_[v]; }
    int depth(int v) const { return depth_[v]; }
    int child_count(int v) const { return kid_begin_[v + 1] - kid_begin_[v]; }
    int child(int v, int i) const { return kids_[kid_begin_[v] + i]; }
    std::span<const int> children(int v) const {
        return {kids_.data() + kid_begin_[v], static_cast<std::size_t>(child_count(v))};
    }
    int subtree_end(int v) const { return v + subtree_size_[v]; }  // preorder range [v, end)
    bool is_ancestor(int a, int v) const { return a <= v && v < subtree_end(a); }
    std::vector<PreorderRecord> records() const;
    std::vector<int> address(int v) const;  // Ulam-Harris word, 1-based letters
    int count(VType t) const;

    friend bool operator==(const FourTypeTree& a, const FourTypeTree& b) {
        return a.type_ == b.type_ && a.kid_begin_ == b.kid_begin_;
    }

private:
    void finish();

    std::vector<VType> type_;
    std::vector<int> parent_;
    std::vector<int> depth_;
    std::vector<int> kid_begin_;
    std::vector<int> kids_;
    std::vector<int> subtree_size_;
};

// Four-type tree with integer labels on even generations (odd entries are 0).
struct Mobile {
    FourTypeTree tree;
    std::vector<int> labels;

    int min_label() const;
};

struct Violation {
    int vertex;
    std::string rule;
};

std::vector<Violation> validate(const FourTypeTree& t);
std::vector<Violation> validate(const Mobile& m);

// v_0 .. v_{2p} by a depth-first corner walk, p = size - 1.
std::vector<int> full_contour(const FourTypeTree& t);
// u_i = v_{2i}, i = 0..p.
std::vector<int> modified_contour(const FourTypeTree& t);

struct ShuffleResult {
    FourTypeTree tree;
    std::vector<int> sigma;  // old preorder id -> new preorder id
};

// One fair coin per odd-generation vertex, drawn in preorder; children are
// reversed where the coin shows 1.
ShuffleResult shuffle(const FourTypeTree& t, Rng& rng);
// Same with explicit coins (indexed by preorder id; entries at even vertices ignored).
ShuffleResult shuffle_with_coins(const FourTypeTree& t, const std::vector<char>& coins);
// Labels transported along sigma.
Mobile transport(const Mobile& m, const ShuffleResult& s);

// Uniform admissible labeling: for every odd vertex the increment vector is
// uniform over its cyclic constraint set.
Mobile sample_labels_uniform(const FourTypeTree& t, Rng& rng);

// Size of the constraint set around an odd vertex whose parent has type
// `parent` and whose children have the listed types, as a decimal string.
std::string admissible_count(VType parent, const std::vector<VType>& children);

// Preorder records `type child_count [label]`, one per line after a size line.
void write_mobile(std::ostream& out, const Mobile& m);
Mobile read_mobile(std::istream& in);

}  // namespace cactus
