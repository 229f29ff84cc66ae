#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cactus/bdg.hpp"
#include "cactus/mobile.hpp"
#include "cactus/rng.hpp"

namespace cactus {

// Face weights q_1, q_2, ... with finite support.
class WeightSeq {
public:
    WeightSeq() = default;
    // weights[k-1] = q_k. Throws InputError unless all entries are finite,
    // nonnegative, and q_k > 0 for some k >= 3.
    explicit WeightSeq(std::vector<double> weights);
    static WeightSeq single(int degree, double weight = 1.0);

    double operator[](int k) const { return k >= 1 && k <= max_degree() ? q_[k - 1] : 0.0; }
    int max_degree() const { return static_cast<int>(q_.size()); }
    bool bipartite() const;  // every odd-degree weight vanishes
    WeightSeq scaled(double c) const;
    double max_weight() const;

private:
    std::vector<double> q_;
};

// `k q_k` lines; blank lines and lines starting with '#' are skipped.
WeightSeq read_weights(std::istream& in);

// f and its partial derivatives up to order two at one point.
struct Jet {
    double f = 0, fx = 0, fy = 0, fxx = 0, fxy = 0, fyy = 0;
};

struct GeneratingValues {
    Jet bullet;            // sum x^k y^k' C(2k+k'+1, k+1) C(k+k', k) q_{2+2k+k'}
    Jet diamond;           // sum x^k y^k' C(2k+k', k) C(k+k', k) q_{1+2k+k'}
    double bipartite = 0;  // sum x^k C(2k+1, k) q_{2k+2}
    double bipartite_dx = 0;
};

GeneratingValues eval_generating_functions(const WeightSeq& q, double x, double y);

enum class CriticalCase { A1, A2 };

struct CriticalParams {
    double a_c = 0;
    double x = 0;
    double y = 0;
    double z_plus = 0;
    double z_zero = 0;
    double spectral_radius = 0;
    double residual_g = 0;
    double residual_h = 0;
    double residual_det = 0;
    CriticalCase regime = CriticalCase::A2;
};

// Mean matrix of the reduced three-type process (1, 2-then-4, 3) for weights a*q at (x, y).
struct MeanMatrix {
    double m[3][3] = {};
};
MeanMatrix mean_matrix(const WeightSeq& q, double a, double x, double y);
// det(Id - M) evaluated from the matrix entries.
double det_identity_minus(const WeightSeq& q, double a, double x, double y);
// det(grad G, grad H) for G = a f. - 1 + 1/x, H = a f<> - y.
double tangency_determinant(const WeightSeq& q, double a, double x, double y);
// Largest real root of the characteristic polynomial of the mean matrix.
double spectral_radius(const WeightSeq& q, double a, double x, double y);

struct SolvePoint {
    double x, y;
};
// Damped Newton for G_a = H_a = 0 from `start`; empty if it fails to converge
// to a point with x > 1, y >= 0.
std::optional<SolvePoint> solve_fixed_point(const WeightSeq& q, double a, SolvePoint start);

// Throws NonConvergence if the tangency point cannot be located.
CriticalParams tune_critical(const WeightSeq& q);

void write_params(std::ostream& out, const CriticalParams& p);

struct OffspringEntry {
    int k;        // type-1 children
    int k2;       // type-2 children
    double prob;
};

struct OffspringLaws {
    double nu1_success = 0.5;           // geometric law of type-3 children of a type-1 vertex
    std::vector<OffspringEntry> nu3;    // children of type-3 vertices
    std::vector<OffspringEntry> nu4;    // children of type-4 vertices
    double c_q = 0;
    double c_q_prime = 0;
    // Law of the number of type-1 grandchildren of a type-1 vertex (through
    // its type-3 children and the type-2/4 chains below them), truncated once
    // the remaining mass is below 1e-15.
    std::vector<double> block_law;
    // Same for the type-2 root with two type-4 children of the null variant.
    std::vector<double> pair_law;
};

OffspringLaws offspring_laws(const WeightSeq& q, const CriticalParams& p);

// Single draws from the offspring laws, which must outlive the sampler.
class OffspringSampler {
public:
    explicit OffspringSampler(const OffspringLaws& laws);

    // Number of type-3 children of a type-1 vertex.
    std::uint64_t type1(Rng& rng) const { return rng.geometric(laws_->nu1_success); }
    // Children counts of a type-3 or type-4 vertex.
    const OffspringEntry& odd(VType t, Rng& rng) const;

    // Types of k type-1 and k2 type-2 children in a uniformly random order.
    template <class Out>
    static void interleave(int k, int k2, Rng& rng, Out&& out) {
        int r1 = k, r2 = k2;
        while (r1 + r2 > 0) {
            if (rng.below(static_cast<std::uint64_t>(r1 + r2)) < static_cast<std::uint64_t>(r1)) {
                --r1;
                out(VType::t1);
            } else {
                --r2;
                out(VType::t2);
            }
        }
    }

private:
    const OffspringLaws* laws_;
    std::vector<double> cum3_, cum4_;
};

enum class RootKind { single, pair };  // type-1 root, or type-2 root with two type-4 children

// Breadth-first Galton-Watson generation. Throws BudgetExhausted once the
// tree exceeds max_vertices.
FourTypeTree sample_mobile_gw(const OffspringLaws& laws, RootKind root, Rng& rng, int max_vertices);

enum class ConditioningMethod {
    rejection,  // whole trees, kept when the type-1 count is exactly right
    // i.i.d. type-1 blocks conditioned on their total, then the cycle lemma.
    // Block sizes are drawn from block_law first; the blocks themselves come
    // from one i.i.d. stream sorted by size once the total is right.
    cyclic
};

struct ConditionedOptions {
    ConditioningMethod method = ConditioningMethod::rejection;
    std::uint64_t max_tries = 100'000'000;
    int max_vertices = 50'000'000;
    // Approximate window: accept type-1 counts within +-window of n - 1.
    // Changes the law; zero means exact conditioning.
    int window = 0;
};

struct ConditionedTree {
    FourTypeTree tree;
    std::uint64_t attempts = 0;
};

// Tree whose number of type-1 vertices is n - 1. Throws LatticeError if no
// tree of that size exists and BudgetExhausted after max_tries attempts.
ConditionedTree sample_conditioned(const OffspringLaws& laws, RootKind root, int n, Rng& rng,
                                   const ConditionedOptions& options = {});

// Attainable type-1 counts 0..limit (flag per count).
std::vector<char> attainable_type1_counts(const OffspringLaws& laws, RootKind root, int limit);

struct BoltzmannSample {
    CombinatorialMap map;
    Mobile mobile;
    BdgMap bdg;
    std::uint64_t attempts = 0;
};

struct BoltzmannSampler {
    WeightSeq q;
    CriticalParams params;
    OffspringLaws laws;

    explicit BoltzmannSampler(const WeightSeq& weights);
    // Map with n vertices (the one-vertex mobile gives the vertex map).
    BoltzmannSample sample(int n, Variant variant, Rng& rng, const ConditionedOptions& options = {}) const;
};

BoltzmannSample sample_boltzmann_map(const WeightSeq& q, int n, Variant variant, Rng& rng,
                                     const ConditionedOptions& options = {});

}  // namespace cactus
