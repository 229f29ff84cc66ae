#include "cactus/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "cactus/errors.hpp"

namespace cactus {

WeightSeq::WeightSeq(std::vector<double> weights) : q_(std::move(weights)) {
    while (!q_.empty() && q_.back() == 0.0) q_.pop_back();
    bool big_face = false;
    for (std::size_t i = 0; i < q_.size(); ++i) {
        if (!std::isfinite(q_[i]) || q_[i] < 0) throw InputError("weights must be finite and nonnegative");
        if (i + 1 >= 3 && q_[i] > 0) big_face = true;
    }
    if (!big_face) throw InputError("some weight q_k with k >= 3 must be positive");
}

WeightSeq WeightSeq::single(int degree, double weight) {
    if (degree < 1) throw InputError("face degree must be positive");
    std::vector<double> w(degree, 0.0);
    w[degree - 1] = weight;
    return WeightSeq(std::move(w));
}

bool WeightSeq::bipartite() const {
    for (int k = 1; k <= max_degree(); k += 2)
        if ((*this)[k] > 0) return false;
    return true;
}

WeightSeq WeightSeq::scaled(double c) const {
    auto w = q_;
    for (auto& v : w) v *= c;
    return WeightSeq(std::move(w));
}

double WeightSeq::max_weight() const { return *std::max_element(q_.begin(), q_.end()); }

WeightSeq read_weights(std::istream& in) {
    std::vector<double> w;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long k = 0;
        double v = 0;
        std::string extra;
        if (!(ls >> k >> v) || (ls >> extra)) throw InputError("weights line " + std::to_string(line_no) + ": expected `k q_k`");
        if (k < 1 || k > 100000) throw InputError("weights line " + std::to_string(line_no) + ": degree out of range");
        if (static_cast<long long>(w.size()) < k) w.resize(k, 0.0);
        w[k - 1] = v;
    }
    return WeightSeq(std::move(w));
}

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

double ipow(double b, int e) {
    if (e < 0) return 0.0;
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

struct Term {
    double coef;
    int k;
    int k2;
};

// Monomials of f. (bullet = true) or f<> for unit scale a = 1.
std::vector<Term> terms(const WeightSeq& q, bool bullet) {
    std::vector<Term> out;
    for (int d = 1; d <= q.max_degree(); ++d) {
        if (q[d] == 0.0) continue;
        const int rest = d - (bullet ? 2 : 1);
        for (int k = 0; 2 * k <= rest; ++k) {
            const int k2 = rest - 2 * k;
            const double c = bullet ? binom(2 * k + k2 + 1, k + 1) * binom(k + k2, k)
                                    : binom(2 * k + k2, k) * binom(k + k2, k);
            out.push_back({c * q[d], k, k2});
        }
    }
    return out;
}

Jet jet(const std::vector<Term>& ts, double x, double y) {
    Jet j;
    for (const auto& t : ts) {
        const double c = t.coef;
        const int k = t.k, m = t.k2;
        j.f += c * ipow(x, k) * ipow(y, m);
        if (k >= 1) j.fx += c * k * ipow(x, k - 1) * ipow(y, m);
        if (m >= 1) j.fy += c * m * ipow(x, k) * ipow(y, m - 1);
        if (k >= 2) j.fxx += c * k * (k - 1) * ipow(x, k - 2) * ipow(y, m);
        if (k >= 1 && m >= 1) j.fxy += c * k * m * ipow(x, k - 1) * ipow(y, m - 1);
        if (m >= 2) j.fyy += c * m * (m - 1) * ipow(x, k) * ipow(y, m - 2);
    }
    return j;
}

Jet scale(Jet j, double a) {
    j.f *= a;
    j.fx *= a;
    j.fy *= a;
    j.fxx *= a;
    j.fxy *= a;
    j.fyy *= a;
    return j;
}

}  // namespace

GeneratingValues eval_generating_functions(const WeightSeq& q, double x, double y) {
    GeneratingValues g;
    g.bullet = jet(terms(q, true), x, y);
    g.diamond = jet(terms(q, false), x, y);
    for (int k = 0; 2 * k + 2 <= q.max_degree(); ++k) {
        const double c = binom(2 * k + 1, k) * q[2 * k + 2];
        g.bipartite += c * ipow(x, k);
        if (k >= 1) g.bipartite_dx += c * k * ipow(x, k - 1);
    }
    return g;
}

MeanMatrix mean_matrix(const WeightSeq& q, double a, double x, double y) {
    const auto g = eval_generating_functions(q, x, y);
    const Jet b = scale(g.bullet, a), d = scale(g.diamond, a);
    MeanMatrix M;
    M.m[0][2] = x - 1;
    M.m[1][0] = y > 0 ? x / y * d.fx : 0.0;
    M.m[1][1] = d.fy;
    M.m[2][0] = x * x / (x - 1) * b.fx;
    M.m[2][1] = x * y / (x - 1) * b.fy;
    return M;
}

double det_identity_minus(const WeightSeq& q, double a, double x, double y) {
    const auto M = mean_matrix(q, a, x, y);
    double A[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A[i][j] = (i == j ? 1.0 : 0.0) - M.m[i][j];
    return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
           A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
}

double tangency_determinant(const WeightSeq& q, double a, double x, double y) {
    const auto g = eval_generating_functions(q, x, y);
    const Jet b = scale(g.bullet, a), d = scale(g.diamond, a);
    return (b.fx - 1.0 / (x * x)) * (d.fy - 1.0) - b.fy * d.fx;
}

double spectral_radius(const WeightSeq& q, double a, double x, double y) {
    const auto g = eval_generating_functions(q, x, y);
    const Jet b = scale(g.bullet, a), d = scale(g.diamond, a);
    const double m13 = x - 1, m22 = d.fy, m31 = x * x / (x - 1) * b.fx;
    const double m21m32 = x * x / (x - 1) * d.fx * b.fy;  // y cancels in the product
    // lambda^3 - m22 lambda^2 - m13 m31 lambda + m13 (m22 m31 - m21 m32)
    const double c2 = -m22, c1 = -m13 * m31, c0 = m13 * (m22 * m31 - m21m32);
    auto p = [&](double l) { return ((l + c2) * l + c1) * l + c0; };
    auto dp = [&](double l) { return (3 * l + 2 * c2) * l + c1; };
    double l = 1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
    for (int it = 0; it < 200; ++it) {
        const double step = p(l) / dp(l);
        l -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(l))) break;
    }
    return l;
}

namespace {

struct Residual {
    double g, h;
};

Residual residual(const WeightSeq& q, double a, double x, double y) {
    const auto v = eval_generating_functions(q, x, y);
    return {a * v.bullet.f - 1.0 + 1.0 / x, a * v.diamond.f - y};
}

constexpr double kSolveTol = 1e-14;

}  // namespace

std::optional<SolvePoint> solve_fixed_point(const WeightSeq& q, double a, SolvePoint start) {
    double x = start.x, y = start.y;
    auto r = residual(q, a, x, y);
    double norm = std::hypot(r.g, r.h);
    for (int it = 0; it < 200; ++it) {
        if (norm < kSolveTol) return SolvePoint{x, y};
        const auto v = eval_generating_functions(q, x, y);
        const double j00 = a * v.bullet.fx - 1.0 / (x * x), j01 = a * v.bullet.fy;
        const double j10 = a * v.diamond.fx, j11 = a * v.diamond.fy - 1.0;
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || std::abs(det) < 1e-300) return std::nullopt;
        const double dx = (-r.g * j11 + r.h * j01) / det;
        const double dy = (-r.h * j00 + r.g * j10) / det;
        double t = 1.0;
        bool moved = false;
        for (int halving = 0; halving <= 30; ++halving, t *= 0.5) {
            const double nx = x + t * dx, ny = y + t * dy;
            if (!(nx > 1.0) || ny < 0.0) continue;
            const auto nr = residual(q, a, nx, ny);
            const double nn = std::hypot(nr.g, nr.h);
            if (nn < norm) {
                x = nx;
                y = ny;
                r = nr;
                norm = nn;
                moved = true;
                break;
            }
        }
        if (!moved) return norm < 1e-12 ? std::optional<SolvePoint>(SolvePoint{x, y}) : std::nullopt;
    }
    return norm < 1e-12 ? std::optional<SolvePoint>(SolvePoint{x, y}) : std::nullopt;
}

namespace {

CriticalParams tune_bipartite(const WeightSeq& q) {
    auto g = [&](double x) {
        const auto v = eval_generating_functions(q, x, 0.0);
        return x * (x - 1) * v.bipartite_dx - v.bipartite;
    };
    double lo = 1.0, hi = 2.0;
    while (g(hi) <= 0) {
        lo = hi;
        hi *= 2;
        if (hi > 1e18) throw NonConvergence("no tangency point found for the bipartite system");
    }
    for (int it = 0; it < 400 && hi - lo > 2 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= 0 ? lo : hi) = mid;
    }
    const double x = (std::abs(g(lo)) <= std::abs(g(hi))) ? lo : hi;
    const auto v = eval_generating_functions(q, x, 0.0);
    CriticalParams p;
    p.regime = CriticalCase::A2;
    p.x = x;
    p.y = 0;
    p.a_c = (1.0 - 1.0 / x) / v.bipartite;
    p.z_plus = x;
    p.z_zero = 0;
    p.residual_g = p.a_c * v.bipartite - (1.0 - 1.0 / x);
    p.residual_h = p.a_c * v.bipartite_dx - 1.0 / (x * x);
    p.residual_det = p.residual_h;
    p.spectral_radius = x * std::sqrt(p.a_c * v.bipartite_dx);
    return p;
}

// Newton on (a, x, y) for G = H = det = 0, started near the fold.
bool polish_fold(const WeightSeq& q, double& a, double& x, double& y) {
    double A = a, X = x, Y = y;
    auto eval = [&](double aa, double xx, double yy, double F[3], double J[3][3]) {
        const auto v = eval_generating_functions(q, xx, yy);
        const Jet b = v.bullet, d = v.diamond;
        const double gx = aa * b.fx - 1.0 / (xx * xx), gy = aa * b.fy;
        const double hx = aa * d.fx, hy = aa * d.fy - 1.0;
        F[0] = aa * b.f - 1.0 + 1.0 / xx;
        F[1] = aa * d.f - yy;
        F[2] = gx * hy - gy * hx;
        if (!J) return;
        J[0][0] = b.f;
        J[0][1] = gx;
        J[0][2] = gy;
        J[1][0] = d.f;
        J[1][1] = hx;
        J[1][2] = hy;
        J[2][0] = b.fx * hy + gx * d.fy - b.fy * hx - gy * d.fx;
        J[2][1] = (aa * b.fxx + 2.0 / (xx * xx * xx)) * hy + gx * aa * d.fxy - aa * b.fxy * hx - gy * aa * d.fxx;
        J[2][2] = aa * b.fxy * hy + gx * aa * d.fyy - aa * b.fyy * hx - gy * aa * d.fxy;
    };
    auto norm3 = [](const double F[3]) { return std::sqrt(F[0] * F[0] + F[1] * F[1] + F[2] * F[2]); };
    double F[3], J[3][3];
    eval(A, X, Y, F, J);
    double norm = norm3(F);
    for (int it = 0; it < 60 && norm > 1e-15; ++it) {
        // Gaussian elimination with partial pivoting on J d = -F.
        double M[3][4];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) M[i][j] = J[i][j];
            M[i][3] = -F[i];
        }
        for (int c = 0; c < 3; ++c) {
            int piv = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
            if (std::abs(M[piv][c]) < 1e-300) return false;
            for (int j = 0; j < 4; ++j) std::swap(M[c][j], M[piv][j]);
            for (int r = c + 1; r < 3; ++r) {
                const double f = M[r][c] / M[c][c];
                for (int j = c; j < 4; ++j) M[r][j] -= f * M[c][j];
            }
        }
        double d[3];
        for (int i = 2; i >= 0; --i) {
            double s = M[i][3];
            for (int j = i + 1; j < 3; ++j) s -= M[i][j] * d[j];
            d[i] = s / M[i][i];
        }
        double t = 1.0;
        bool moved = false;
        for (int halving = 0; halving <= 30; ++halving, t *= 0.5) {
            const double na = A + t * d[0], nx = X + t * d[1], ny = Y + t * d[2];
            if (!(na > 0) || !(nx > 1.0) || ny < 0) continue;
            double NF[3];
            eval(na, nx, ny, NF, nullptr);
            if (norm3(NF) < norm) {
                A = na;
                X = nx;
                Y = ny;
                moved = true;
                break;
            }
        }
        if (!moved) break;
        eval(A, X, Y, F, J);
        norm = norm3(F);
    }
    if (!(norm < 1e-12)) return false;
    a = A;
    x = X;
    y = Y;
    return true;
}

CriticalParams tune_general(const WeightSeq& q) {
    const double a_guess = 1.0 / q.max_weight();
    double a_lo = a_guess / 16;
    auto first_branch = [&](double a, SolvePoint from) -> std::optional<SolvePoint> {
        auto s = solve_fixed_point(q, a, from);
        if (s && tangency_determinant(q, a, s->x, s->y) > 0) return s;
        return std::nullopt;
    };
    auto sol = first_branch(a_lo, {1.1, 0.1});
    for (int shrink = 0; !sol && shrink < 40; ++shrink) {
        a_lo /= 16;
        sol = first_branch(a_lo, {1.1, 0.1});
    }
    if (!sol) throw NonConvergence("no solution of the fixed-point system at the starting scale");
    double a_hi = 0;
    for (int it = 0; it < 200; ++it) {
        const double a = 2 * a_lo;
        auto next = first_branch(a, *sol);
        if (!next) {
            a_hi = a;
            break;
        }
        a_lo = a;
        sol = next;
    }
    if (a_hi == 0) throw NonConvergence("continuation in the scale never lost the solution");
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a_lo + a_hi);
        if (auto s = first_branch(mid, *sol)) {
            a_lo = mid;
            sol = s;
        } else {
            a_hi = mid;
        }
    }
    double a = a_lo, x = sol->x, y = sol->y;
    double pa = a, px = x, py = y;
    if (polish_fold(q, pa, px, py) && std::abs(pa - a) <= 1e-6 * a) {
        a = pa;
        x = px;
        y = py;
    }
    CriticalParams p;
    p.regime = CriticalCase::A1;
    p.a_c = a;
    p.x = x;
    p.y = y;
    p.z_plus = x;
    p.z_zero = y * y;
    const auto r = residual(q, a, x, y);
    p.residual_g = r.g;
    p.residual_h = r.h;
    p.residual_det = tangency_determinant(q, a, x, y);
    p.spectral_radius = spectral_radius(q, a, x, y);
    return p;
}

}  // namespace

CriticalParams tune_critical(const WeightSeq& q) {
    auto p = q.bipartite() ? tune_bipartite(q) : tune_general(q);
    if (!std::isfinite(p.a_c) || std::abs(p.residual_g) > 1e-10 || std::abs(p.residual_h) > 1e-10)
        throw NonConvergence("critical system residuals above 1e-10");
    if (std::abs(p.spectral_radius - 1.0) > 1e-6)
        throw NonConvergence("spectral radius at the tangency point is not 1");
    return p;
}

void write_params(std::ostream& out, const CriticalParams& p) {
    out << std::setprecision(17);
    out << "case = " << (p.regime == CriticalCase::A1 ? "A1" : "A2") << '\n';
    out << "a_c = " << p.a_c << '\n';
    out << "x = " << p.x << '\n';
    out << "y = " << p.y << '\n';
    out << "z_plus = " << p.z_plus << '\n';
    out << "z_zero = " << p.z_zero << '\n';
    out << "spectral_radius = " << p.spectral_radius << '\n';
    out << "residual_g = " << p.residual_g << '\n';
    out << "residual_h = " << p.residual_h << '\n';
    out << "residual_det = " << p.residual_det << '\n';
}

namespace {

using Series = std::vector<double>;

Series series_mul(const Series& a, const Series& b) {
    Series c(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

// Generating function (in the type-1 count) of one type-3 or type-4 vertex's
// contribution, given that of a type-4 vertex.
Series odd_series(const std::vector<OffspringEntry>& table, const Series& g4) {
    const std::size_t len = g4.size();
    Series out(len, 0.0);
    for (const auto& e : table) {
        if (static_cast<std::size_t>(e.k) >= len) continue;
        Series t(len, 0.0);
        t[0] = 1.0;
        for (int i = 0; i < e.k2; ++i) t = series_mul(t, g4);
        for (std::size_t j = 0; j + e.k < len; ++j) out[j + e.k] += e.prob * t[j];
    }
    return out;
}

// Type-1 count below a type-4 vertex: smallest fixed point of g4 = odd(nu4, g4).
Series type4_series(const OffspringLaws& laws, std::size_t len) {
    Series g4(len, 0.0);
    if (laws.nu4.empty()) return g4;
    for (int it = 0; it < 200000; ++it) {
        const Series next = odd_series(laws.nu4, g4);
        double diff = 0;
        for (std::size_t j = 0; j < len; ++j) diff = std::max(diff, std::abs(next[j] - g4[j]));
        g4 = next;
        if (diff < 1e-18) break;
    }
    return g4;
}

Series block_series(const OffspringLaws& laws, std::size_t len) {
    const Series g3 = odd_series(laws.nu3, type4_series(laws, len));
    // Geometric number of type-3 children: G = p / (1 - (1 - p) g3).
    const double p = laws.nu1_success;
    Series c(len), out(len, 0.0);
    for (std::size_t j = 0; j < len; ++j) c[j] = (1 - p) * g3[j];
    out[0] = p / (1 - c[0]);
    for (std::size_t j = 1; j < len; ++j) {
        double acc = 0;
        for (std::size_t i = 1; i <= j; ++i) acc += c[i] * out[j - i];
        out[j] = acc / (1 - c[0]);
    }
    return out;
}

// Type-2 root with two type-4 children.
Series pair_series(const OffspringLaws& laws, std::size_t len) {
    const Series g4 = type4_series(laws, len);
    return series_mul(g4, g4);
}

template <class Build>
Series truncated_law(Build build) {
    for (std::size_t len = 64;; len *= 2) {
        Series s = build(len);
        const double mass = std::accumulate(s.begin(), s.end(), 0.0);
        if (1.0 - mass < 1e-15 || len >= 16384) {
            while (s.size() > 1 && s.back() == 0.0) s.pop_back();
            return s;
        }
    }
}

}  // namespace

OffspringLaws offspring_laws(const WeightSeq& q, const CriticalParams& p) {
    OffspringLaws laws;
    laws.nu1_success = 1.0 / p.z_plus;
    const double y = std::sqrt(p.z_zero);
    auto build = [&](bool bullet, std::vector<OffspringEntry>& table) {
        double total = 0;
        for (const auto& t : terms(q, bullet)) {
            const double w = p.a_c * t.coef * ipow(p.z_plus, t.k) * ipow(y, t.k2);
            if (w > 0) {
                table.push_back({t.k, t.k2, w});
                total += w;
            }
        }
        for (auto& e : table) e.prob /= total;
        return total > 0 ? 1.0 / total : 0.0;
    };
    laws.c_q = build(true, laws.nu3);
    laws.c_q_prime = build(false, laws.nu4);
    if (laws.nu3.empty()) throw InputError("offspring law of type-3 vertices has empty support");
    if (p.regime == CriticalCase::A1 && laws.nu4.empty())
        throw InputError("offspring law of type-4 vertices has empty support");
    laws.block_law = truncated_law([&](std::size_t len) { return block_series(laws, len); });
    if (!laws.nu4.empty())
        laws.pair_law = truncated_law([&](std::size_t len) { return pair_series(laws, len); });
    return laws;
}

OffspringSampler::OffspringSampler(const OffspringLaws& laws) : laws_(&laws) {
    auto cum = [](const std::vector<OffspringEntry>& t) {
        std::vector<double> c;
        double s = 0;
        for (const auto& e : t) c.push_back(s += e.prob);
        return c;
    };
    cum3_ = cum(laws.nu3);
    cum4_ = cum(laws.nu4);
}

const OffspringEntry& OffspringSampler::odd(VType t, Rng& rng) const {
    const auto& table = t == VType::t3 ? laws_->nu3 : laws_->nu4;
    const auto& cum = t == VType::t3 ? cum3_ : cum4_;
    if (table.empty()) throw InputError("type-4 vertex drawn but its offspring law is empty");
    const double u = rng.uniform() * cum.back();
    std::size_t i = 0;
    while (i + 1 < cum.size() && u >= cum[i]) ++i;
    return table[i];
}

namespace {

struct GwOutcome {
    bool complete = false;
    int type1 = 0;
};

// Breadth-first generation into flat arrays; children of v occupy
// [first[v], first[v] + count[v]). Stops early past either cap.
GwOutcome generate_bfs(const OffspringSampler& draw, RootKind root, Rng& rng, int max_vertices, int max_type1,
                       std::vector<VType>& type, std::vector<int>& first, std::vector<int>& count) {
    type.clear();
    first.clear();
    count.clear();
    GwOutcome out;
    auto add = [&](VType t) {
        type.push_back(t);
        first.push_back(0);
        count.push_back(0);
        if (t == VType::t1) ++out.type1;
    };
    if (root == RootKind::single) {
        add(VType::t1);
    } else {
        add(VType::t2);
        add(VType::t4);
        add(VType::t4);
        first[0] = 1;
        count[0] = 2;
    }
    std::size_t head = root == RootKind::single ? 0 : 1;
    for (; head < type.size(); ++head) {
        if (static_cast<int>(type.size()) > max_vertices || out.type1 > max_type1) return out;
        const int v = static_cast<int>(head);
        first[v] = static_cast<int>(type.size());
        switch (type[v]) {
            case VType::t1: {
                const auto k = draw.type1(rng);
                if (k > static_cast<std::uint64_t>(max_vertices)) return out;
                for (std::uint64_t i = 0; i < k; ++i) add(VType::t3);
                count[v] = static_cast<int>(k);
                break;
            }
            case VType::t2:
                add(VType::t4);
                count[v] = 1;
                break;
            case VType::t3:
            case VType::t4: {
                const auto& e = draw.odd(type[v], rng);
                OffspringSampler::interleave(e.k, e.k2, rng, [&](VType t) { add(t); });
                count[v] = e.k + e.k2;
                break;
            }
        }
    }
    out.complete = static_cast<int>(type.size()) <= max_vertices && out.type1 <= max_type1;
    return out;
}

FourTypeTree bfs_to_tree(const std::vector<VType>& type, const std::vector<int>& first, const std::vector<int>& count) {
    std::vector<PreorderRecord> records;
    records.reserve(type.size());
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        records.push_back({type[v], count[v]});
        for (int i = count[v] - 1; i >= 0; --i) stack.push_back(first[v] + i);
    }
    return FourTypeTree(records);
}

using Bits = boost::dynamic_bitset<>;

Bits sumset(const Bits& a, const Bits& b) {
    Bits out(a.size());
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out |= a << i;
    return out;
}

Bits k_fold(const Bits& s, int times) {
    Bits out(s.size());
    out.set(0);
    for (int i = 0; i < times; ++i) out = sumset(out, s);
    return out;
}

// Type-1 counts contributed by one type-3 (resp. type-4) subtree, counting
// only its type-1 children (not their own subtrees).
Bits block_contributions(const std::vector<OffspringEntry>& table, const Bits& t4) {
    Bits out(t4.size());
    for (const auto& e : table) {
        if (static_cast<std::size_t>(e.k) >= t4.size()) continue;
        out |= k_fold(t4, e.k2) << static_cast<std::size_t>(e.k);
    }
    return out;
}

}  // namespace

std::vector<char> attainable_type1_counts(const OffspringLaws& laws, RootKind root, int limit) {
    const std::size_t size = static_cast<std::size_t>(limit) + 1;
    Bits t4(size);
    for (;;) {
        const Bits next = block_contributions(laws.nu4, t4);
        if (next == t4) break;
        t4 = next;
    }
    const Bits t3 = block_contributions(laws.nu3, t4);
    Bits semigroup(size);
    semigroup.set(0);
    for (;;) {
        const Bits next = semigroup | sumset(semigroup, t3);
        if (next == semigroup) break;
        semigroup = next;
    }
    std::vector<char> out(size, 0);
    if (root == RootKind::single) {
        for (std::size_t s = 1; s < size; ++s) out[s] = semigroup[s - 1];
    } else {
        const Bits roots = sumset(t4, t4);
        for (auto r = roots.find_first(); r != Bits::npos; r = roots.find_next(r)) {
            if (r == 0) {
                out[0] = 1;
                continue;
            }
            for (std::size_t s = r; s < size; ++s)
                if (semigroup[s - r]) out[s] = 1;
        }
    }
    return out;
}

FourTypeTree sample_mobile_gw(const OffspringLaws& laws, RootKind root, Rng& rng, int max_vertices) {
    const OffspringSampler draw(laws);
    std::vector<VType> type;
    std::vector<int> first, count;
    const auto outcome =
        generate_bfs(draw, root, rng, max_vertices, std::numeric_limits<int>::max(), type, first, count);
    if (!outcome.complete) throw BudgetExhausted("Galton-Watson tree exceeded the vertex cap");
    return bfs_to_tree(type, first, count);
}

namespace {

// Blocks: a type-1 vertex with everything below it down to (excluding) the
// next type-1 vertices, which appear as placeholders {t1, -1}.
struct BlockStore {
    std::vector<PreorderRecord> records;
    std::vector<int> begin{0};
};

void emit_odd(const OffspringSampler& draw, VType t, Rng& rng, std::vector<PreorderRecord>& out, int& holes,
              int depth) {
    if (depth > 100000) throw BudgetExhausted("type-2 chain too deep");
    const auto& e = draw.odd(t, rng);
    out.push_back({t, e.k + e.k2});
    std::vector<VType> order;
    order.reserve(e.k + e.k2);
    OffspringSampler::interleave(e.k, e.k2, rng, [&](VType c) { order.push_back(c); });
    for (VType c : order) {
        if (c == VType::t1) {
            out.push_back({VType::t1, -1});
            ++holes;
        } else {
            out.push_back({VType::t2, 1});
            emit_odd(draw, VType::t4, rng, out, holes, depth + 1);
        }
    }
}

// Appends one block to `out` and returns its number of placeholders.
int emit_block(const OffspringSampler& draw, Rng& rng, std::vector<PreorderRecord>& out, int max_vertices) {
    const auto k = draw.type1(rng);
    if (k > static_cast<std::uint64_t>(max_vertices)) throw BudgetExhausted("block exceeded the vertex cap");
    out.push_back({VType::t1, static_cast<int>(k)});
    int holes = 0;
    for (std::uint64_t i = 0; i < k; ++i) emit_odd(draw, VType::t3, rng, out, holes, 0);
    return holes;
}

// Pair root: a type-2 vertex over two type-4 subtrees, cut at type-1 vertices.
int emit_pair_root(const OffspringSampler& draw, Rng& rng, std::vector<PreorderRecord>& out) {
    out.push_back({VType::t2, 2});
    int holes = 0;
    for (int i = 0; i < 2; ++i) emit_odd(draw, VType::t4, rng, out, holes, 0);
    return holes;
}

// Glues blocks in depth-first order: each placeholder opens the next block.
// `order` must be a valid Lukasiewicz sequence of blocks.
FourTypeTree assemble_blocks(const BlockStore& store, const std::vector<int>& order) {
    const int m = static_cast<int>(order.size());
    std::vector<PreorderRecord> out;
    out.reserve(store.records.size());
    std::vector<std::pair<int, int>> stack;  // block id, read position
    int used = 0;
    auto open_block = [&]() {
        const int id = order[used++];
        stack.emplace_back(id, store.begin[id]);
    };
    open_block();
    while (!stack.empty()) {
        auto& [id, pos] = stack.back();
        if (pos == store.begin[id + 1]) {
            stack.pop_back();
            continue;
        }
        const auto rec = store.records[pos++];
        if (rec.child_count < 0) {
            if (used == m) throw InternalError("cycle lemma ran out of blocks");
            open_block();
        } else {
            out.push_back(rec);
        }
    }
    if (used != m) throw InternalError("cycle lemma left blocks unused");
    return FourTypeTree(out);
}

// Block hole counts i.i.d. from the block law, conditioned on summing to
// `total` (early exit once the sum overshoots).
std::vector<int> conditioned_holes(const std::vector<double>& law, int blocks, long long total, Rng& rng,
                                   const ConditionedOptions& options, std::uint64_t& attempts) {
    std::vector<double> cum(law.size());
    std::partial_sum(law.begin(), law.end(), cum.begin());
    std::vector<int> holes(blocks);
    for (;;) {
        if (++attempts > options.max_tries) throw BudgetExhausted("conditioned sampling exhausted its try budget");
        long long sum = 0;
        int b = 0;
        for (; b < blocks && sum <= total; ++b) {
            const double u = rng.uniform() * cum.back();
            int k = 0;
            while (k + 1 < static_cast<int>(cum.size()) && u >= cum[k]) ++k;
            holes[b] = k;
            sum += k;
        }
        if (b == blocks && sum == total) return holes;
    }
}

// Fills every position from one i.i.d. block stream: the j-th position
// asking for k placeholders gets the j-th streamed block with k of them.
std::vector<int> fill_blocks(const OffspringSampler& draw, const std::vector<int>& holes, std::size_t law_size,
                             BlockStore& store, Rng& rng, const ConditionedOptions& options) {
    const int blocks = static_cast<int>(holes.size());
    std::vector<int> need(law_size, 0);
    for (int k : holes) ++need[k];
    std::vector<std::vector<int>> pool(law_size);
    int missing = blocks;
    const long long budget = 64LL * std::max(options.max_vertices, blocks);
    long long generated = 0;
    while (missing > 0) {
        const std::size_t mark = store.records.size();
        const int k = emit_block(draw, rng, store.records, options.max_vertices);
        generated += static_cast<long long>(store.records.size() - mark);
        if (generated > budget) throw BudgetExhausted("block stream exceeded its budget");
        if (k < static_cast<int>(need.size()) && static_cast<int>(pool[k].size()) < need[k]) {
            pool[k].push_back(static_cast<int>(store.begin.size()) - 1);
            store.begin.push_back(static_cast<int>(store.records.size()));
            --missing;
        } else {
            store.records.resize(mark);
        }
    }
    std::vector<int> cursor(law_size, 0), block_at(blocks);
    for (int b = 0; b < blocks; ++b) block_at[b] = pool[holes[b]][cursor[holes[b]]++];
    return block_at;
}

ConditionedTree sample_cyclic(const OffspringLaws& laws, const OffspringSampler& draw, int blocks, Rng& rng,
                              const ConditionedOptions& options) {
    const auto& law = laws.block_law;
    if (law.empty()) throw InputError("offspring laws carry no block law");
    ConditionedTree result;
    const auto holes = conditioned_holes(law, blocks, blocks - 1, rng, options, result.attempts);
    BlockStore store;
    const auto block_at = fill_blocks(draw, holes, law.size(), store, rng, options);
    // Cycle lemma: start right after the first minimum of the partial sums of (holes - 1).
    long long s = 0, best = 0;
    int start = 0;
    for (int b = 0; b < blocks; ++b) {
        s += holes[b] - 1;
        if (s < best) {
            best = s;
            start = (b + 1) % blocks;
        }
    }
    std::vector<int> order(blocks);
    for (int b = 0; b < blocks; ++b) order[b] = block_at[(start + b) % blocks];
    result.tree = assemble_blocks(store, order);
    return result;
}

// Coefficients [s^j] B(s)^m for j < len, up to a common factor, from
// k b_0 p_k = sum_i ((m + 1) i - k) b_i p_{k-i}; all terms are positive for k <= m.
std::vector<double> power_coefficients(const std::vector<double>& b, int m, int len) {
    std::vector<double> p(len, 0.0);
    p[0] = 1;
    for (int k = 1; k < len; ++k) {
        double acc = 0;
        for (int i = 1; i <= k && i < static_cast<int>(b.size()); ++i)
            acc += ((m + 1.0) * i - k) * b[i] * p[k - i];
        p[k] = acc / (k * b[0]);
        if (p[k] > 1e250)
            for (int j = 0; j <= k; ++j) p[j] *= 1e-250;
    }
    return p;
}

// Null-variant trees with `blocks` type-1 vertices. The root keeps h
// placeholders with probability proportional to
// P(root has h) * (h / blocks) * P(blocks i.i.d. blocks hold blocks - h),
// the cycle-lemma count of forests of h trees. The forest is then an i.i.d.
// block sequence with that total, rotated to one of its h valid starts.
ConditionedTree sample_cyclic_pair(const OffspringLaws& laws, const OffspringSampler& draw, int blocks, Rng& rng,
                                   const ConditionedOptions& options) {
    const auto& law = laws.block_law;
    const auto& root_law = laws.pair_law;
    if (law.empty() || root_law.empty()) throw InputError("offspring laws carry no block law");
    ConditionedTree result;
    BlockStore store;
    if (blocks == 0) {
        for (;;) {
            if (++result.attempts > options.max_tries)
                throw BudgetExhausted("conditioned sampling exhausted its try budget");
            store.records.clear();
            if (emit_pair_root(draw, rng, store.records) == 0) break;
        }
        store.begin.push_back(static_cast<int>(store.records.size()));
        result.tree = assemble_blocks(store, {0});
        return result;
    }
    const int top = std::min<int>(blocks, static_cast<int>(root_law.size()) - 1);
    const auto power = power_coefficients(law, blocks, blocks);
    std::vector<double> weight(top + 1, 0.0);
    for (int h = 1; h <= top; ++h) weight[h] = root_law[h] * h * power[blocks - h];
    std::partial_sum(weight.begin(), weight.end(), weight.begin());
    const double u = rng.uniform() * weight.back();
    int h = 1;
    while (h < top && u >= weight[h]) ++h;

    for (;;) {
        if (++result.attempts > options.max_tries)
            throw BudgetExhausted("conditioned sampling exhausted its try budget");
        store.records.clear();
        if (emit_pair_root(draw, rng, store.records) == h) break;
    }
    store.begin.push_back(static_cast<int>(store.records.size()));

    const auto holes = conditioned_holes(law, blocks, blocks - h, rng, options, result.attempts);
    const auto block_at = fill_blocks(draw, holes, law.size(), store, rng, options);

    // Start r is valid when the rotated walk of (holes - 1) stays above -h
    // until its last step: S_r is a strict prefix minimum and no later
    // partial sum drops h or more below it.
    std::vector<long long> walk(blocks + 1, 0);
    for (int b = 0; b < blocks; ++b) walk[b + 1] = walk[b] + holes[b] - 1;
    // walk values lie in [-blocks, blocks]
    std::vector<long long> suffix_min(blocks + 1, blocks + 1);
    for (int k = blocks - 1; k >= 1; --k) suffix_min[k] = std::min(suffix_min[k + 1], walk[k]);
    std::vector<int> starts;
    long long prefix_min = blocks + 1;
    for (int r = 0; r < blocks; ++r) {
        const bool record = walk[r] < prefix_min;
        prefix_min = std::min(prefix_min, walk[r]);
        if (record && suffix_min[r + 1] - walk[r] > -h) starts.push_back(r);
    }
    if (static_cast<int>(starts.size()) != h) throw InternalError("cycle lemma found the wrong number of starts");
    const int start = starts[rng.below(starts.size())];
    std::vector<int> order{0};
    for (int b = 0; b < blocks; ++b) order.push_back(block_at[(start + b) % blocks]);
    result.tree = assemble_blocks(store, order);
    return result;
}

}  // namespace

ConditionedTree sample_conditioned(const OffspringLaws& laws, RootKind root, int n, Rng& rng,
                                   const ConditionedOptions& options) {
    const int want = n - 1;
    if (want < 0) throw InputError("target vertex count must be positive");
    if (options.window < 0) throw InputError("window must be nonnegative");
    if (options.window == 0) {
        const auto ok = attainable_type1_counts(laws, root, want);
        if (!ok[want]) throw LatticeError("no tree has " + std::to_string(want) + " type-1 vertices under these laws");
    }
    const OffspringSampler draw(laws);
    if (options.method == ConditioningMethod::cyclic && options.window == 0)
        return root == RootKind::single ? sample_cyclic(laws, draw, want, rng, options)
                                        : sample_cyclic_pair(laws, draw, want, rng, options);
    ConditionedTree result;
    std::vector<VType> type;
    std::vector<int> first, count;
    const int lo = want - options.window, hi = want + options.window;
    for (std::uint64_t attempt = 1; attempt <= options.max_tries; ++attempt) {
        const auto out = generate_bfs(draw, root, rng, options.max_vertices, hi, type, first, count);
        if (out.complete && out.type1 >= lo && out.type1 <= hi) {
            result.tree = bfs_to_tree(type, first, count);
            result.attempts = attempt;
            return result;
        }
    }
    throw BudgetExhausted("conditioned sampling exhausted its try budget");
}

BoltzmannSampler::BoltzmannSampler(const WeightSeq& weights)
    : q(weights), params(tune_critical(weights)), laws(offspring_laws(weights, params)) {}

BoltzmannSample BoltzmannSampler::sample(int n, Variant variant, Rng& rng, const ConditionedOptions& options) const {
    const RootKind root = variant == Variant::null ? RootKind::pair : RootKind::single;
    auto tree = sample_conditioned(laws, root, n, rng, options);
    BoltzmannSample s;
    s.attempts = tree.attempts;
    s.mobile = sample_labels_uniform(tree.tree, rng);
    s.bdg = mobile_to_map(s.mobile, variant);
    s.map = s.bdg.map;
    return s;
}

BoltzmannSample sample_boltzmann_map(const WeightSeq& q, int n, Variant variant, Rng& rng,
                                     const ConditionedOptions& options) {
    return BoltzmannSampler(q).sample(n, variant, rng, options);
}

}  // namespace cactus
