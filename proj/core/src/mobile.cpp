#include "cactus/mobile.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "cactus/errors.hpp"

namespace cactus {

using BigCount = boost::multiprecision::cpp_int;

FourTypeTree::FourTypeTree(std::span<const PreorderRecord> records) {
    if (records.empty()) throw InputError("a tree needs at least one vertex");
    const int n = static_cast<int>(records.size());
    type_.resize(n);
    parent_.assign(n, -1);
    std::vector<std::pair<int, int>> open;  // vertex, children still expected
    for (int v = 0; v < n; ++v) {
        const auto& r = records[v];
        if (r.child_count < 0) throw InputError("negative child count");
        if (type_number(r.type) < 1 || type_number(r.type) > 4) throw InputError("vertex type must be 1..4");
        if (v > 0) {
            if (open.empty()) throw InputError("records describe more than one tree");
            parent_[v] = open.back().first;
            if (--open.back().second == 0) open.pop_back();
        }
        type_[v] = r.type;
        if (r.child_count > 0) open.emplace_back(v, r.child_count);
    }
    if (!open.empty()) throw InputError("records end before every child was listed");
    finish();
}

void FourTypeTree::finish() {
    const int n = size();
    depth_.assign(n, 0);
    kid_begin_.assign(n + 1, 0);
    for (int v = 1; v < n; ++v) {
        depth_[v] = depth_[parent_[v]] + 1;
        ++kid_begin_[parent_[v] + 1];
    }
    for (int v = 0; v < n; ++v) kid_begin_[v + 1] += kid_begin_[v];
    kids_.assign(n > 0 ? n - 1 : 0, 0);
    std::vector<int> fill(kid_begin_.begin(), kid_begin_.end() - 1);
    for (int v = 1; v < n; ++v) kids_[fill[parent_[v]]++] = v;
    subtree_size_.assign(n, 1);
    for (int v = n - 1; v > 0; --v) subtree_size_[parent_[v]] += subtree_size_[v];
}

FourTypeTree FourTypeTree::from_children(const std::vector<VType>& types, const std::vector<std::vector<int>>& children,
                                         int root) {
    std::vector<PreorderRecord> records;
    records.reserve(types.size());
    std::vector<int> stack{root};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        records.push_back({types[v], static_cast<int>(children[v].size())});
        for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
    }
    return FourTypeTree(records);
}

std::vector<PreorderRecord> FourTypeTree::records() const {
    std::vector<PreorderRecord> out(size());
    for (int v = 0; v < size(); ++v) out[v] = {type_[v], child_count(v)};
    return out;
}

std::vector<int> FourTypeTree::address(int v) const {
    std::vector<int> word;
    while (v > 0) {
        const int p = parent_[v];
        const auto kids = children(p);
        word.push_back(static_cast<int>(std::find(kids.begin(), kids.end(), v) - kids.begin()) + 1);
        v = p;
    }
    std::reverse(word.begin(), word.end());
    return word;
}

int FourTypeTree::count(VType t) const { return static_cast<int>(std::count(type_.begin(), type_.end(), t)); }

int Mobile::min_label() const {
    int m = 0;
    for (int v = 0; v < tree.size(); ++v)
        if (tree.depth(v) % 2 == 0) m = std::min(m, labels[v]);
    return m;
}

std::vector<Violation> validate(const FourTypeTree& t) {
    std::vector<Violation> out;
    if (t.size() == 0) return {{-1, "empty tree"}};
    if (!is_even_type(t.type(0))) out.push_back({0, "(i) root type must be 1 or 2"});
    for (int v = 0; v < t.size(); ++v) {
        const VType tv = t.type(v);
        if (is_even_type(tv) != (t.depth(v) % 2 == 0)) out.push_back({v, "type parity disagrees with generation"});
        for (int c : t.children(v)) {
            const VType tc = t.type(c);
            if (tv == VType::t1 && tc != VType::t3) out.push_back({c, "(ii) children of type 1 must have type 3"});
            if (tv == VType::t2 && tc != VType::t4) out.push_back({c, "(iii) children of type 2 must have type 4"});
            if ((tv == VType::t3 || tv == VType::t4) && !is_even_type(tc))
                out.push_back({c, "(iv) children of types 3 and 4 must have type 1 or 2"});
        }
        if (tv == VType::t2) {
            const int want = v == 0 ? 2 : 1;
            if (t.child_count(v) != want)
                out.push_back({v, v == 0 ? "(iii) a type-2 root has exactly two children"
                                         : "(iii) a type-2 vertex has exactly one child"});
        }
    }
    return out;
}

std::vector<Violation> validate(const Mobile& m) {
    auto out = validate(m.tree);
    const auto& t = m.tree;
    if (static_cast<int>(m.labels.size()) != t.size()) {
        out.push_back({-1, "label vector size differs from tree size"});
        return out;
    }
    if (m.labels[0] != 0) out.push_back({0, "root label must be 0"});
    for (int x = 0; x < t.size(); ++x) {
        if (t.depth(x) % 2 == 0) continue;
        const auto kids = t.children(x);
        const int k = static_cast<int>(kids.size());
        // cyclic sequence u(0) = parent, u(1..k) = children, u(k+1) = parent
        for (int j = 0; j <= k; ++j) {
            const int from = j == 0 ? t.parent(x) : kids[j - 1];
            const int to = j == k ? t.parent(x) : kids[j];
            const int drop = t.type(to) == VType::t2 ? 0 : 1;
            if (m.labels[to] < m.labels[from] - drop)
                out.push_back({to, drop ? "(a) label decreases by more than one around an odd vertex"
                                        : "(b) type-2 label below its predecessor around an odd vertex"});
        }
    }
    return out;
}

std::vector<int> full_contour(const FourTypeTree& t) {
    std::vector<int> seq;
    seq.reserve(2 * t.size() - 1);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    seq.push_back(0);
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next < t.child_count(v)) {
            const int c = t.child(v, next++);
            stack.emplace_back(c, 0);
            seq.push_back(c);
        } else {
            stack.pop_back();
            if (!stack.empty()) seq.push_back(stack.back().first);
        }
    }
    return seq;
}

std::vector<int> modified_contour(const FourTypeTree& t) {
    const auto seq = full_contour(t);
    std::vector<int> out;
    out.reserve(seq.size() / 2 + 1);
    for (std::size_t i = 0; i < seq.size(); i += 2) out.push_back(seq[i]);
    return out;
}

ShuffleResult shuffle_with_coins(const FourTypeTree& t, const std::vector<char>& coins) {
    const int n = t.size();
    std::vector<PreorderRecord> records;
    records.reserve(n);
    std::vector<int> sigma(n, -1);
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        sigma[v] = static_cast<int>(records.size());
        records.push_back({t.type(v), t.child_count(v)});
        const auto kids = t.children(v);
        const bool flip = t.depth(v) % 2 == 1 && coins[v];
        if (flip)
            for (int c : kids) stack.push_back(c);
        else
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return {FourTypeTree(records), std::move(sigma)};
}

ShuffleResult shuffle(const FourTypeTree& t, Rng& rng) {
    std::vector<char> coins(t.size(), 0);
    for (int v = 0; v < t.size(); ++v)
        if (t.depth(v) % 2 == 1) coins[v] = rng.coin() ? 1 : 0;
    return shuffle_with_coins(t, coins);
}

Mobile transport(const Mobile& m, const ShuffleResult& s) {
    Mobile out{s.tree, std::vector<int>(m.labels.size(), 0)};
    for (std::size_t v = 0; v < m.labels.size(); ++v) out.labels[s.sigma[v]] = m.labels[v];
    return out;
}

namespace {

// Counts of completions of an increment sequence around one odd vertex.
// Position j holds i_j in [-j, k+1-j]; the step into position j+1 may drop
// by drop[j] (1 for a type-1 target, 0 for type 2).
template <class Count>
struct IncrementTable {
    int k = 0;
    std::vector<int> drop;
    std::vector<std::vector<Count>> ways;  // ways[j][x + j]

    int lo(int j) const { return -j; }
    int hi(int j) const { return k + 1 - j; }
    const Count& at(int j, int x) const { return ways[j][x + j]; }

    explicit IncrementTable(std::vector<int> drops) : k(static_cast<int>(drops.size()) - 1), drop(std::move(drops)) {
        ways.resize(k + 2);
        for (int j = 0; j <= k + 1; ++j) ways[j].assign(hi(j) - lo(j) + 1, Count(0));
        ways[k + 1][0 + k + 1] = 1;
        for (int j = k; j >= 0; --j) {
            // suffix sums of position j+1
            std::vector<Count> suffix(hi(j + 1) - lo(j + 1) + 2, Count(0));
            for (int y = hi(j + 1); y >= lo(j + 1); --y)
                suffix[y - lo(j + 1)] = suffix[y - lo(j + 1) + 1] + at(j + 1, y);
            for (int x = lo(j); x <= hi(j); ++x) {
                const int from = std::max(x - drop[j], lo(j + 1));
                if (from <= hi(j + 1)) ways[j][x + j] = suffix[from - lo(j + 1)];
            }
        }
    }

    const Count& total() const { return at(0, 0); }

    // Increment vector i_1..i_k of rank r in lexicographic order.
    std::vector<int> unrank(Count r) const {
        std::vector<int> inc(k);
        int x = 0;
        for (int j = 0; j < k; ++j) {
            for (int y = std::max(x - drop[j], lo(j + 1));; ++y) {
                if (y > hi(j + 1)) throw InternalError("label unranking overran its table");
                const Count& w = at(j + 1, y);
                if (r < w) {
                    x = y;
                    break;
                }
                r -= w;
            }
            inc[j] = x;
        }
        return inc;
    }
};

BigCount big_below(const BigCount& bound, Rng& rng) {
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    const std::size_t words = (bits + 63) / 64;
    for (;;) {
        BigCount r = 0;
        for (std::size_t w = 0; w < words; ++w) r = (r << 64) | BigCount(rng.next());
        r &= (BigCount(1) << bits) - 1;
        if (r < bound) return r;
    }
}

std::vector<int> drops_for(VType parent, std::span<const VType> children) {
    std::vector<int> d;
    d.reserve(children.size() + 1);
    for (VType c : children) d.push_back(c == VType::t2 ? 0 : 1);
    d.push_back(parent == VType::t2 ? 0 : 1);
    return d;
}

constexpr int kMaxSmallArity = 28;  // all counts fit in 64 bits below this

class LabelSampler {
public:
    std::vector<int> draw(const std::vector<int>& drops, Rng& rng) {
        if (static_cast<int>(drops.size()) - 1 <= kMaxSmallArity) {
            auto it = small_.find(drops);
            if (it == small_.end()) it = small_.emplace(drops, IncrementTable<std::uint64_t>(drops)).first;
            return it->second.unrank(rng.below(it->second.total()));
        }
        auto it = big_.find(drops);
        if (it == big_.end()) it = big_.emplace(drops, IncrementTable<BigCount>(drops)).first;
        return it->second.unrank(big_below(it->second.total(), rng));
    }

private:
    std::map<std::vector<int>, IncrementTable<std::uint64_t>> small_;
    std::map<std::vector<int>, IncrementTable<BigCount>> big_;
};

}  // namespace

std::string admissible_count(VType parent, const std::vector<VType>& children) {
    return IncrementTable<BigCount>(drops_for(parent, children)).total().str();
}

Mobile sample_labels_uniform(const FourTypeTree& t, Rng& rng) {
    Mobile m{t, std::vector<int>(t.size(), 0)};
    LabelSampler sampler;
    std::vector<VType> kid_types;
    for (int x = 0; x < t.size(); ++x) {  // preorder: parents are labelled first
        if (t.depth(x) % 2 == 0) continue;
        const auto kids = t.children(x);
        if (kids.empty()) continue;
        kid_types.clear();
        for (int c : kids) kid_types.push_back(t.type(c));
        const int base = m.labels[t.parent(x)];
        const auto inc = sampler.draw(drops_for(t.type(t.parent(x)), kid_types), rng);
        for (std::size_t j = 0; j < kids.size(); ++j) m.labels[kids[j]] = base + inc[j];
    }
    return m;
}

void write_mobile(std::ostream& out, const Mobile& m) {
    const auto& t = m.tree;
    out << t.size() << '\n';
    for (int v = 0; v < t.size(); ++v) {
        out << type_number(t.type(v)) << ' ' << t.child_count(v);
        if (t.depth(v) % 2 == 0) out << ' ' << m.labels[v];
        out << '\n';
    }
}

Mobile read_mobile(std::istream& in) {
    long long n = 0;
    if (!(in >> n) || n <= 0) throw InputError("mobile header must be a positive vertex count");
    std::string line;
    std::getline(in, line);
    std::vector<PreorderRecord> records;
    std::vector<std::vector<long long>> fields;
    for (long long v = 0; v < n; ++v) {
        if (!std::getline(in, line)) throw InputError("truncated mobile records");
        std::istringstream ls(line);
        std::vector<long long> f;
        long long x;
        while (ls >> x) f.push_back(x);
        if (f.size() < 2 || f.size() > 3) throw InputError("mobile record must be `type child_count [label]`");
        if (f[0] < 1 || f[0] > 4) throw InputError("vertex type must be 1..4");
        records.push_back({static_cast<VType>(f[0]), static_cast<int>(f[1])});
        fields.push_back(std::move(f));
    }
    Mobile m{FourTypeTree(records), std::vector<int>(n, 0)};
    for (int v = 0; v < n; ++v) {
        const bool even = m.tree.depth(v) % 2 == 0;
        if (even != (fields[v].size() == 3)) throw InputError("labels must be present exactly on even generations");
        if (even) m.labels[v] = static_cast<int>(fields[v][2]);
    }
    return m;
}

}  // namespace cactus
