// Acceptance suite. One PASS/FAIL line per criterion; the exit status is
// nonzero if any selected criterion fails. Usage: cactus_acceptance [k ...]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cactus/bdg.hpp"
#include "cactus/boltzmann.hpp"
#include "cactus/cactus_tree.hpp"
#include "cactus/errors.hpp"
#include "cactus/experiments.hpp"
#include "cactus/graph.hpp"
#include "cactus/planar_map.hpp"
#include "cactus/stats.hpp"
#include "random_graphs.hpp"

using namespace cactus;
namespace fs = std::filesystem;

namespace {

// Pinned thresholds.
constexpr double kRuntime1 = 30, kRuntime2 = 300, kRuntime3 = 60, kRuntime4 = 1200, kRuntime5 = 600,
                 kRuntime6 = 3600;
constexpr double kTuneAnalytic = 1e-10, kTuneGrid = 1e-8, kDetIdentity = 1e-9, kHomogeneity = 1e-10;
constexpr double kVolumeRelative = 0.05, kCubicRelative = 0.10;
constexpr double kSplitKs = 0.03, kSplitMeanSe = 4, kArcSineKs = 0.03;
constexpr double kOnePointKs = 0.05, kFittedTwoPointKs = 0.07;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

fs::path data_dir() {
    if (const char* env = std::getenv("CACTUS_DATA_DIR")) return env;
    return CACTUS_DATA_DIR;
}

Config load_config(const std::string& name) {
    std::ifstream in(data_dir() / "configs" / name);
    if (!in) throw InputError("missing config " + name);
    return Config::parse(in);
}

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Largest r such that v and w are joined inside {u : d(root, u) >= r}.
int threshold_oracle(const PointedGraph& g, const std::vector<int>& h, int v, int w) {
    for (int r = std::min(h[v], h[w]); r > 0; --r) {
        std::vector<char> seen(g.size(), 0);
        std::vector<int> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int x : g.neighbors(u))
                if (!seen[x] && h[x] >= r) seen[x] = 1, stack.push_back(x);
        }
        if (seen[w]) return r;
    }
    return 0;
}

void criterion1(Verdict& v) {
    Rng rng(20261016);
    long pairs = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(12));
        const auto g = testing::random_connected_graph(rng, n, 0.1 + 0.4 * rng.uniform());
        const auto t = build_cactus(g);
        const auto h = graph_distances(g, g.root());
        std::vector<std::vector<int>> d(n);
        for (int a = 0; a < n; ++a) d[a] = graph_distances(g, a);
        for (int a = 0; a < n; ++a) {
            v.require(cactus_distance(t, g.root(), a) == h[a], "root distance equals graph distance");
            for (int b = 0; b < n; ++b, ++pairs) {
                const int c = cactus_distance(t, a, b);
                const int m = maximin_oracle(g, a, b);
                v.require(m == threshold_oracle(g, h, a, b), "maximin oracles agree");
                v.require(c == h[a] + h[b] - 2 * m, "cactus distance formula");
                v.require(c <= d[a][b], "cactus distance below graph distance");
            }
        }
        const int k = t.class_count();
        int edges = 0, roots = 0;
        for (int c = 0; c < k; ++c) {
            const auto& node = t.node(c);
            if (node.parent < 0) {
                ++roots;
            } else {
                ++edges;
                v.require(t.node(node.parent).height == node.height - 1, "class tree heights");
            }
        }
        v.require(roots == 1 && edges == k - 1, "class graph is a tree");
        // the tree path metric on classes matches the cactus distance
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                v.require(t.distance_between_classes(t.class_of(a), t.class_of(b)) == cactus_distance(t, a, b),
                          "class distance");
    }
    v.detail << "200 graphs, " << pairs << " pairs";
}

void criterion2(Verdict& v) {
    Rng rng(4242);
    const std::vector<WeightSeq> seqs = {WeightSeq::single(3), WeightSeq::single(4), WeightSeq::single(5),
                                         WeightSeq(std::vector<double>{0, 0, 1, 1, 0, 0.5})};
    std::vector<BoltzmannSampler> samplers;
    for (const auto& q : seqs) samplers.emplace_back(q);
    ConditionedOptions opts;
    opts.method = ConditioningMethod::cyclic;
    const Variant variants[] = {Variant::positive, Variant::negative, Variant::null};

    int done = 0, max_edges = 0, cor_maps = 0, lattice_skips = 0, oversize = 0;
    long cor_pairs = 0;
    while (done < 10000) {
        const auto& sampler = samplers[rng.below(samplers.size())];
        const Variant variant = variants[rng.below(3)];
        const int n = static_cast<int>(std::exp(std::log(2.0) + rng.uniform() * std::log(1500.0)));
        BoltzmannSample s;
        try {
            s = sampler.sample(n, variant, rng, opts);
        } catch (const LatticeError&) {
            ++lattice_skips;
            continue;
        }
        const auto& m = s.mobile;
        // sizes are capped at 1e4 mobile edges
        if (m.tree.size() - 1 > 10000) {
            ++oversize;
            continue;
        }
        max_edges = std::max(max_edges, m.tree.size() - 1);
        v.require(euler_holds(s.map), "Euler");
        // the one-vertex mobile codes the vertex map, which has a single vertex
        const int expected = m.tree.size() == 1 ? 1 : n;
        v.require(s.map.vertex_count() == expected, "vertex count at n = " + std::to_string(n));
        v.require(verify_distance_identity(s.bdg, m), "label distance identity");
        v.require(check_face_bookkeeping(s.bdg, m).empty(), "face bookkeeping");
        // the vertex map counts as positive whatever variant was asked for
        const bool vertex_map = m.tree.size() == 1;
        v.require(classify(s.map) == (vertex_map ? Variant::positive : variant), "map class");

        // one map out of each hundred, skipping vertex maps
        if (cor_maps <= done / 100 && !vertex_map) {
            ++cor_maps;
            const auto g = s.map.underlying_graph();
            const auto cac = build_cactus(g);
            int max_degree = 0;
            for (const auto& f : faces(s.map)) max_degree = std::max(max_degree, f.degree);
            std::vector<int> type1;
            for (int u = 0; u < m.tree.size(); ++u)
                if (m.tree.type(u) == VType::t1) type1.push_back(u);
            auto check_pair = [&](int a, int b) {
                const int formula = m.labels[a] + m.labels[b] - 2 * path_label_min(m, a, b);
                const int d = cactus_distance(cac, s.bdg.map_vertex[a], s.bdg.map_vertex[b]);
                v.require(std::abs(d - formula) <= 2 * max_degree + 2, "cactus distance vs label formula");
                ++cor_pairs;
            };
            if (type1.size() <= 200) {
                for (int a : type1)
                    for (int b : type1) check_pair(a, b);
            } else {
                for (int i = 0; i < 20000; ++i) check_pair(type1[rng.below(type1.size())], type1[rng.below(type1.size())]);
            }
        }
        ++done;
    }
    v.require(max_edges <= 10000, "mobile sizes up to 1e4 edges");
    v.detail << done << " maps, largest mobile " << max_edges << " edges, " << cor_maps << " maps / " << cor_pairs
             << " pairs for the 2D+2 bound, " << lattice_skips << " unreachable sizes and " << oversize
             << " oversize mobiles redrawn";
}

// 2y^3 a^2 - (2 + 3y^2) a + y = 0 after eliminating x; a_c maximises the smaller root.
void triangulation_oracle(double& a, double& x, double& y) {
    auto a_of = [](double t) {
        const double b = 2 + 3 * t * t;
        return (b - std::sqrt(b * b - 8 * std::pow(t, 4))) / (4 * t * t * t);
    };
    double lo = 0.01, hi = 3, best_y = lo;
    for (int round = 0; round < 40; ++round) {
        const int cells = 2000;
        double best = -1;
        for (int i = 0; i <= cells; ++i) {
            const double t = lo + (hi - lo) * i / cells;
            if (a_of(t) > best) best = a_of(t), best_y = t;
        }
        const double step = (hi - lo) / cells;
        lo = best_y - 2 * step;
        hi = best_y + 2 * step;
    }
    a = a_of(best_y);
    y = (3 - std::sqrt(3.0)) / (6 * a);
    x = 1 / (1 - 2 * a * y);
}

void criterion3(Verdict& v) {
    const auto quad = tune_critical(WeightSeq::single(4));
    v.require(std::abs(quad.a_c - 1.0 / 12) < kTuneAnalytic && std::abs(quad.x - 2) < kTuneAnalytic,
              "quadrangulation point");
    double a, x, y;
    triangulation_oracle(a, x, y);
    const auto tri = tune_critical(WeightSeq::single(3));
    const double tri_err = std::max({std::abs(tri.a_c - a), std::abs(tri.x - x), std::abs(tri.y - y)});
    v.require(tri_err < kTuneGrid, "triangulation grid oracle");

    Rng rng(1212);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> w(3 + rng.below(6), 0.0);
        for (std::size_t k = 2; k < w.size(); ++k) w[k] = rng.uniform();
        w.back() += 0.1;
        const WeightSeq q(w);
        const double pa = 0.2 * rng.uniform() + 1e-3, px = 1 + 2 * rng.uniform(), py = 2 * rng.uniform();
        const double lhs = det_identity_minus(q, pa, px, py);
        const double rhs = px * px * tangency_determinant(q, pa, px, py);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }
    v.require(worst < kDetIdentity, "determinant identity");

    double homog = 0;
    for (int d : {3, 4, 5}) {
        const auto q = WeightSeq::single(d);
        const double base = tune_critical(q).a_c;
        for (double c : {0.5, 3.0, 17.0}) homog = std::max(homog, std::abs(tune_critical(q.scaled(c)).a_c * c - base));
    }
    v.require(homog < kHomogeneity, "homogeneity");
    v.detail << "quadrangulation a_c-1/12 " << quad.a_c - 1.0 / 12 << ", x-2 " << quad.x - 2 << "; triangulation error "
             << tri_err << "; identity rel " << worst << "; homogeneity " << homog;
}

void criterion4(Verdict& v) {
    auto cfg = load_config("volume_growth.cfg");
    cfg.set("workers", std::to_string(workers()));
    const auto rep = volume_growth(cfg);
    for (const char* d : {"0.05", "0.1", "0.2"}) {
        const auto& r = rep.row(std::string("prob_within[") + d + "]");
        const double rel = r.estimate / r.reference - 1;
        v.require(std::abs(rel) <= kVolumeRelative, std::string("delta ") + d + " within 5%");
        v.detail << "delta " << d << ": " << r.estimate << " vs " << r.reference << " (" << std::showpos << 100 * rel
                 << std::noshowpos << "%, se " << r.std_error << "); ";
    }
    const auto& small = rep.row("small_delta_law[0.05]");
    const double rel = small.estimate / small.reference - 1;
    v.require(std::abs(rel) <= kCubicRelative, "cubic law within 10%");
    v.detail << "cubic law " << std::showpos << 100 * rel << std::noshowpos << "%";
}

void criterion5(Verdict& v) {
    auto cfg = load_config("separating_cycle.cfg");
    cfg.set("workers", std::to_string(workers()));
    const auto rep = separating_cycle(cfg);
    const auto& ks = rep.row("ks_split_vs_beta");
    const auto& mean = rep.row("mean_split");
    const auto& cross = rep.row("ks_arc_sine_vs_split");
    const double z = std::abs(mean.estimate - 0.5) / mean.std_error;
    v.require(ks.estimate < kSplitKs, "KS vs Beta(1/4,1/4)");
    v.require(z <= kSplitMeanSe, "mean 1/2");
    v.require(cross.estimate < kArcSineKs, "arc-sine cross-oracle");
    v.detail << "KS " << ks.estimate << ", mean " << mean.estimate << " (" << z << " se), arc-sine KS "
             << cross.estimate;
}

void criterion6(Verdict& v) {
    auto quad_cfg = load_config("convergence_quadrangulation.cfg");
    quad_cfg.set("workers", std::to_string(workers()));
    const auto quad = cactus_convergence(quad_cfg);
    const double k1_small = quad.row("ks_one_point[1000]").estimate, k1 = quad.row("ks_one_point[4000]").estimate;
    const double k2_small = quad.row("ks_two_point[1000]").estimate, k2 = quad.row("ks_two_point[4000]").estimate;
    v.require(k1 < kOnePointKs, "one-point KS at n = 4000");
    v.require(k1 < k1_small, "one-point KS decreasing");
    v.require(k2 < k2_small, "two-point KS decreasing");

    auto tri_cfg = load_config("convergence_triangulation.cfg");
    tri_cfg.set("workers", std::to_string(workers()));
    const auto tri = cactus_convergence(tri_cfg);
    const double kt = tri.row("ks_two_point[4000]").estimate;
    v.require(kt < kFittedTwoPointKs, "fitted two-point KS for triangulations");
    v.detail << "quadrangulations one-point KS " << k1_small << " -> " << k1 << ", two-point " << k2_small << " -> "
             << k2 << "; triangulations two-point KS " << kt << " (scale " << tri.row("scale_constant[4000]").estimate
             << ")";
}

std::string render(const StatReport& r) {
    std::ostringstream out;
    write_csv(out, r);
    write_json(out, r);
    write_samples_csv(out, r);
    return out.str();
}

// Every experiment at reduced size, workers 1 against workers 3.
void criterion7(Verdict& v) {
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"volume-growth", "volume_growth.cfg"},
        {"ball-exponent", "ball_exponent.cfg"},
        {"separating-cycle", "separating_cycle.cfg"},
        {"convergence", "convergence_quadrangulation.cfg"},
        {"convergence", "convergence_triangulation.cfg"},
    };
    for (const auto& [name, file] : runs) {
        auto cfg = load_config(file);
        cfg.set("replicas", "40");
        if (cfg.has("tree_size")) cfg.set("tree_size", "2000");
        if (cfg.has("sizes")) {
            cfg.set("sizes", "200,400");
            cfg.set("reference_tree_size", "2000");
            cfg.set("reference_replicas", "200");
        }
        cfg.set("dump_samples", "true");
        std::string out[2];
        for (int i = 0; i < 2; ++i) {
            cfg.set("workers", i == 0 ? "1" : "3");
            out[i] = render(run_experiment(name, cfg));
        }
        v.require(out[0] == out[1], file + " identical across worker counts");
        v.detail << file << (out[0] == out[1] ? " identical" : " DIFFERS") << " (" << out[0].size() << " bytes); ";
    }
}

struct Criterion {
    int id;
    const char* title;
    double runtime_limit;  // seconds, 0 = none
    std::function<void(Verdict&)> body;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "cactus oracle equivalence", kRuntime1, criterion1},
        {2, "BDG integrity", kRuntime2, criterion2},
        {3, "criticality solver", kRuntime3, criterion3},
        {4, "volume growth", kRuntime4, criterion4},
        {5, "separating cycle", kRuntime5, criterion5},
        {6, "cactus convergence", kRuntime6, criterion6},
        {7, "determinism", 0, criterion7},
    };
    std::vector<int> chosen;
    for (int i = 1; i < argc; ++i) chosen.push_back(std::atoi(argv[i]));
    if (chosen.empty())
        for (const auto& c : all) chosen.push_back(c.id);

    bool ok = true;
    for (const auto& c : all) {
        if (std::find(chosen.begin(), chosen.end(), c.id) == chosen.end()) continue;
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(v);
        } catch (const std::exception& e) {
            v.require(false, "exception");
            v.detail << "exception: " << e.what() << "; ";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.runtime_limit > 0) v.require(secs < c.runtime_limit, "runtime limit");
        std::cout << "criterion " << c.id << " " << (v.pass ? "PASS" : "FAIL") << " [" << c.title << "] "
                  << v.detail.str() << " (" << secs << " s)" << std::endl;
        ok = ok && v.pass;
    }
    return ok ? 0 : 1;
}
