#include "cactus/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <tuple>

#include "cactus/errors.hpp"

namespace cactus {

LabeledTree::LabeledTree(std::vector<int> parents, std::vector<double> labels, LabelMode mode,
                         std::vector<double> edge_minima)
    : parent_(std::move(parents)), label_(std::move(labels)), edge_min_(std::move(edge_minima)), mode_(mode) {
    const int n = size();
    if (n == 0 || parent_[0] != -1) throw InputError("tree needs a root with parent -1");
    if (static_cast<int>(label_.size()) != n) throw InputError("one label per vertex expected");
    if (mode_ == LabelMode::bridge && static_cast<int>(edge_min_.size()) != n)
        throw InputError("bridge mode needs one edge minimum per vertex");
    // Preorder check: the parent of v must be on the current root path.
    std::vector<int> stack{0};
    depth_.assign(n, 0);
    for (int v = 1; v < n; ++v) {
        const int p = parent_[v];
        while (!stack.empty() && stack.back() != p) stack.pop_back();
        if (stack.empty()) throw InputError("parents are not listed in preorder");
        depth_[v] = depth_[p] + 1;
        stack.push_back(v);
        if (mode_ == LabelMode::bridge && edge_min_[v] > std::min(label_[v], label_[p]))
            throw InputError("edge minimum above an end label");
    }
    subtree_size_.assign(n, 1);
    for (int v = n - 1; v > 0; --v) subtree_size_[parent_[v]] += subtree_size_[v];
    kid_begin_.assign(n + 1, 0);
    for (int v = 1; v < n; ++v) ++kid_begin_[parent_[v] + 1];
    for (int v = 0; v < n; ++v) kid_begin_[v + 1] += kid_begin_[v];
    kids_.resize(n - 1);
    auto fill = kid_begin_;
    for (int v = 1; v < n; ++v) kids_[fill[parent_[v]]++] = v;

    contour_.reserve(2 * n - 1);
    contour_.push_back(0);
    std::vector<std::pair<int, int>> walk{{0, 0}};
    while (!walk.empty()) {
        auto& [v, i] = walk.back();
        if (i < kid_begin_[v + 1] - kid_begin_[v]) {
            const int c = kids_[kid_begin_[v] + i++];
            contour_.push_back(c);
            walk.emplace_back(c, 0);
        } else {
            walk.pop_back();
            if (!walk.empty()) contour_.push_back(walk.back().first);
        }
    }
}

double LabeledTree::edge_min(int v) const {
    return mode_ == LabelMode::bridge ? edge_min_[v] : std::min(label_[v], label_[parent_[v]]);
}

double LabeledTree::label_scale() const { return edges() > 0 ? std::pow(2.0 * edges(), -0.25) : 1.0; }
double LabeledTree::distance_scale() const { return edges() > 0 ? std::pow(2.0 * edges(), -0.5) : 1.0; }

LabeledTree sample_labeled_tree(int edges, Rng& rng, LabelMode mode) {
    if (edges < 1) throw InputError("tree needs at least one edge");
    const int len = 2 * edges + 1;
    std::vector<signed char> steps(len, -1);
    std::fill(steps.begin(), steps.begin() + edges, 1);
    for (int i = len - 1; i > 0; --i) std::swap(steps[i], steps[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    int sum = 0, best = 0, start = 0;
    for (int i = 0; i < len; ++i) {
        sum += steps[i];
        if (sum < best) {
            best = sum;
            start = (i + 1) % len;
        }
    }
    std::vector<int> parent{-1};
    std::vector<double> label{0.0}, emin{0.0};
    parent.reserve(edges + 1);
    label.reserve(edges + 1);
    int cur = 0;
    for (int k = 0; k + 1 < len; ++k) {
        if (steps[(start + k) % len] > 0) {
            const int c = static_cast<int>(parent.size());
            const double a = label[cur];
            const double b = a + rng.normal();
            parent.push_back(cur);
            label.push_back(b);
            if (mode == LabelMode::bridge) {
                // Minimum of a unit-time Brownian bridge from a to b.
                const double e = -2.0 * std::log(rng.uniform_open0());
                emin.push_back(0.5 * (a + b - std::sqrt((a - b) * (a - b) + e)));
            }
            cur = c;
        } else {
            cur = parent[cur];
        }
    }
    if (mode == LabelMode::vertex) emin.clear();
    return LabeledTree(std::move(parent), std::move(label), mode, std::move(emin));
}

namespace {

void check_vertex(const LabeledTree& t, int v) {
    if (v < 0 || v >= t.size()) throw InputError("vertex id out of range");
}

}  // namespace

double path_min(const LabeledTree& t, int u, int v) {
    check_vertex(t, u);
    check_vertex(t, v);
    double best = std::min(t.label(u), t.label(v));
    while (t.depth(u) > t.depth(v)) {
        best = std::min(best, t.edge_min(u));
        u = t.parent(u);
    }
    while (t.depth(v) > t.depth(u)) {
        best = std::min(best, t.edge_min(v));
        v = t.parent(v);
    }
    while (u != v) {
        best = std::min({best, t.edge_min(u), t.edge_min(v)});
        u = t.parent(u);
        v = t.parent(v);
    }
    return best;
}

double kac_distance(const LabeledTree& t, int u, int v) {
    return t.label_scale() * (t.label(u) + t.label(v) - 2 * path_min(t, u, v));
}

int min_label_vertex(const LabeledTree& t) {
    int best = 0;
    for (int v = 1; v < t.size(); ++v)
        if (t.label(v) < t.label(best)) best = v;
    return best;
}

double global_min(const LabeledTree& t) {
    double best = t.label(0);
    for (int v = 1; v < t.size(); ++v) best = std::min(best, t.edge_min(v));
    return best;
}

double distance_to_min(const LabeledTree& t, int v) {
    check_vertex(t, v);
    return t.label_scale() * (t.label(v) - global_min(t));
}

int sample_mass_vertex(const LabeledTree& t, Rng& rng) {
    if (t.edges() < 1) return 0;
    return t.contour()[rng.below(2 * static_cast<std::uint64_t>(t.edges()))];
}

VolumeSplit separating_split(const LabeledTree& t, Rng& rng) {
    const int n_edges = t.edges();
    if (n_edges < 4) throw InputError("separating split needs at least 4 edges");
    int u1 = sample_mass_vertex(t, rng), u2 = sample_mass_vertex(t, rng);
    while (u1 == u2) u2 = sample_mass_vertex(t, rng);
    const double total = 2.0 * n_edges;
    // Mass of the subtree of c together with half of the edge above it.
    auto hanging = [&](int c) { return (2.0 * t.subtree_size(c) - 1.0) / total; };

    if (t.mode() == LabelMode::bridge) {
        // The minimum sits inside one edge of the path; find the vertex below it.
        int u = u1, v = u2, below = -1;
        double best = 0;
        auto take = [&](int w) {
            if (below < 0 || t.edge_min(w) < best) {
                best = t.edge_min(w);
                below = w;
            }
        };
        while (t.depth(u) > t.depth(v)) take(u), u = t.parent(u);
        while (t.depth(v) > t.depth(u)) take(v), v = t.parent(v);
        while (u != v) take(u), take(v), u = t.parent(u), v = t.parent(v);
        const double side = hanging(below);
        const double vol1 = t.is_ancestor(below, u1) ? side : 1.0 - side;
        return {vol1, 1.0 - vol1};
    }

    // Vertex labels only: beta is the vertex of least label on the path.
    int u = u1, v = u2;
    int beta = t.label(u1) <= t.label(u2) ? u1 : u2;
    auto take = [&](int w) {
        if (t.label(w) < t.label(beta)) beta = w;
    };
    while (t.depth(u) > t.depth(v)) take(u = t.parent(u));
    while (t.depth(v) > t.depth(u)) take(v = t.parent(v));
    while (u != v) take(u = t.parent(u)), take(v = t.parent(v));

    // Mass of the component of tree minus beta that holds w (zero for beta).
    auto component = [&](int w) {
        if (w == beta) return 0.0;
        if (!t.is_ancestor(beta, w)) return 1.0 - hanging(beta);
        int c = w;
        while (t.parent(c) != beta) c = t.parent(c);
        return hanging(c);
    };
    const double c1 = component(u1), c2 = component(u2);
    // beta and any side branches at beta are shared half-half
    const double vol1 = c1 + 0.5 * (1.0 - c1 - c2);
    return {vol1, 1.0 - vol1};
}

double arc_sine_split_oracle(const LabeledTree& t, Rng& rng) {
    const int n_edges = t.edges();
    if (n_edges < 1) throw InputError("tree needs at least one edge");
    const auto& c = t.contour();
    const double s = rng.uniform() * 2.0 * n_edges;
    const int i = std::min(static_cast<int>(s), 2 * n_edges - 1);
    const double frac = s - i;
    const int from = c[i], to = c[i + 1];
    const int low = t.depth(from) < t.depth(to) ? to : from;  // deeper end of the current edge
    const double h = t.depth(from) + (t.depth(to) - t.depth(from)) * frac;
    const double hs = std::sin(0.5 * std::numbers::pi * rng.uniform());
    const double level = h - h * hs * hs;
    const int j = std::min(t.depth(low), static_cast<int>(std::floor(level)) + 1);
    int a = low;
    while (t.depth(a) > j) a = t.parent(a);
    return (2.0 * (t.subtree_size(a) - 1) + 2.0 * (j - level)) / (2.0 * n_edges);
}

std::vector<double> ball_masses(const LabeledTree& t, int center, std::span<const double> radii) {
    check_vertex(t, center);
    const std::size_t k = radii.size();
    std::vector<double> out(k, 0.0);
    if (k == 0) return out;
    if (!std::is_sorted(radii.begin(), radii.end())) throw InputError("radii must be sorted");
    if (t.edges() == 0) {
        for (std::size_t r = 0; r < k; ++r) out[r] = radii[r] >= 0 ? 1.0 : 0.0;
        return out;
    }
    const double scale = t.label_scale();
    const double zc = t.label(center);
    const double reach = radii.back() / scale;
    const double total = 2.0 * t.edges();
    std::vector<double> bucket(k + 1, 0.0);
    // (vertex, vertex we came from, minimum along the path so far)
    std::vector<std::tuple<int, int, double>> stack{{center, -1, zc}};
    while (!stack.empty()) {
        const auto [w, from, m] = stack.back();
        stack.pop_back();
        const double d = (zc + t.label(w) - 2 * m) * scale;
        const int deg = static_cast<int>(t.children(w).size()) + (w > 0 ? 1 : 0);
        const auto first = std::lower_bound(radii.begin(), radii.end(), d) - radii.begin();
        bucket[first] += deg / total;
        auto visit = [&](int x, double edge_m) {
            const double nm = std::min(m, edge_m);
            if (zc - nm <= reach) stack.emplace_back(x, w, nm);
        };
        if (w > 0 && t.parent(w) != from) visit(t.parent(w), t.edge_min(w));
        for (int x : t.children(w))
            if (x != from) visit(x, t.edge_min(x));
    }
    double acc = 0;
    for (std::size_t r = 0; r < k; ++r) out[r] = acc += bucket[r];
    return out;
}

namespace {

double bridge_min(double a, double b, double duration, Rng& rng) {
    const double e = -2.0 * duration * std::log(rng.uniform_open0());
    return 0.5 * (a + b - std::sqrt((a - b) * (a - b) + e));
}

// Walks one bridge segment, adding the mass of its cells to the ball buckets.
class ContinuumBall {
public:
    ContinuumBall(std::span<const double> radii, double center_label, double label_scale, double density,
                  int pieces, Rng& rng)
        : radii_(radii),
          bucket_(radii.size() + 1, 0.0),
          zc_(center_label),
          scale_(label_scale),
          reach_(radii.back() / label_scale),
          density_(density),
          pieces_(pieces),
          rng_(rng) {}

    bool reachable(double running_min) const { return zc_ - running_min <= reach_; }

    // Bridge from z0 to z1 over `duration`; returns the running minimum at the
    // far end, or nothing if the ball cannot extend past it.
    std::optional<double> segment(double z0, double z1, double duration, double running_min) {
        const int cells = std::max(1, static_cast<int>(std::ceil(pieces_ * duration - 1e-9)));
        const int steps = 2 * cells;
        const double h = duration / steps;
        double y = z0, m = running_min;
        for (int k = 0; k < steps; ++k) {
            const double left = duration - k * h;
            double next = z1;
            if (k + 1 < steps) next = y + h / left * (z1 - y) + std::sqrt(h * (left - h) / left) * rng_.normal();
            m = std::min(m, bridge_min(y, next, h, rng_));
            y = next;
            if (!reachable(m)) return std::nullopt;
            if (k % 2 == 0) add((zc_ + y - 2 * m) * scale_, 2 * h * density_);
        }
        return m;
    }

    std::vector<double> masses() const {
        std::vector<double> out(radii_.size());
        double acc = 0;
        for (std::size_t r = 0; r < out.size(); ++r) out[r] = acc += bucket_[r];
        return out;
    }

private:
    void add(double d, double mass) {
        bucket_[std::lower_bound(radii_.begin(), radii_.end(), d) - radii_.begin()] += mass;
    }

    std::span<const double> radii_;
    std::vector<double> bucket_;
    double zc_, scale_, reach_, density_;
    int pieces_;
    Rng& rng_;
};

}  // namespace

std::vector<double> continuum_ball_masses(const LabeledTree& t, Rng& rng, std::span<const double> radii, int pieces) {
    if (t.edges() < 1) throw InputError("tree needs at least one edge");
    if (pieces < 1) throw InputError("pieces must be positive");
    if (radii.empty()) return {};
    if (!std::is_sorted(radii.begin(), radii.end()) || radii.front() < 0)
        throw InputError("radii must be sorted and nonnegative");
    const auto& c = t.contour();
    const double s = rng.uniform() * 2.0 * t.edges();
    const int i = std::min(static_cast<int>(s), 2 * t.edges() - 1);
    const int low = t.depth(c[i]) < t.depth(c[i + 1]) ? c[i + 1] : c[i];
    const int high = t.parent(low);
    const double up = t.depth(c[i]) < t.depth(c[i + 1]) ? s - i : 1.0 - (s - i);  // distance from `high`
    const double za = t.label(high), zb = t.label(low);
    const double zx = za + up * (zb - za) + std::sqrt(up * (1 - up)) * rng.normal();

    ContinuumBall ball(radii, zx, t.label_scale(), 1.0 / t.edges(), pieces, rng);
    std::vector<std::tuple<int, int, double>> stack;
    if (auto m = ball.segment(zx, za, up, zx)) stack.emplace_back(high, low, *m);
    if (auto m = ball.segment(zx, zb, 1.0 - up, zx)) stack.emplace_back(low, high, *m);
    while (!stack.empty()) {
        const auto [w, from, m] = stack.back();
        stack.pop_back();
        auto go = [&](int x) {
            if (auto nm = ball.segment(t.label(w), t.label(x), 1.0, m)) stack.emplace_back(x, w, *nm);
        };
        if (w > 0 && t.parent(w) != from) go(t.parent(w));
        for (int x : t.children(w))
            if (x != from) go(x);
    }
    return ball.masses();
}

void write_tree_summary(std::ostream& out, const LabeledTree& t) {
    int max_depth = 0;
    double max_label = t.label(0);
    for (int v = 0; v < t.size(); ++v) {
        max_depth = std::max(max_depth, t.depth(v));
        max_label = std::max(max_label, t.label(v));
    }
    out << "edges = " << t.edges() << '\n';
    out << "label_mode = " << (t.mode() == LabelMode::bridge ? "bridge" : "vertex") << '\n';
    out << "height = " << max_depth << '\n';
    out << "scaled_height = " << max_depth * t.distance_scale() << '\n';
    out << "min_label_vertex = " << min_label_vertex(t) << '\n';
    out << "min_label = " << global_min(t) << '\n';
    out << "max_label = " << max_label << '\n';
    out << "scaled_label_range = " << (max_label - global_min(t)) * t.label_scale() << '\n';
}

}  // namespace cactus
