#include "cactus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "cactus/errors.hpp"

namespace cactus {

double ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
    if (xs.empty() || ys.empty()) throw InputError("KS statistic needs non-empty samples");
    std::vector<double> a(xs.begin(), xs.end()), b(ys.begin(), ys.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_vs_cdf(std::span<const double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw InputError("KS statistic needs a non-empty sample");
    std::vector<double> a(xs.begin(), xs.end());
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    double d = 0;
    for (std::size_t i = 0; i < a.size();) {
        std::size_t k = i;
        while (k < a.size() && a[k] == a[i]) ++k;
        const double f = cdf(a[i]);
        d = std::max({d, std::abs(f - i / n), std::abs(k / n - f)});
        i = k;
    }
    return d;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw InputError("mean of an empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double standard_error(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double n = static_cast<double>(xs.size());
    return std::sqrt(ss / (n - 1) / n);
}

double quantile(std::vector<double> xs, double p) {
    if (xs.empty()) throw InputError("quantile of an empty sample");
    if (!(p >= 0 && p <= 1)) throw InputError("quantile level outside [0, 1]");
    std::sort(xs.begin(), xs.end());
    const double pos = p * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

double beta_quarter_normalizer() {
    const double g = boost::math::tgamma(0.25);
    return std::sqrt(std::numbers::pi) / (g * g);
}

double beta_quarter_cdf(double x) {
    if (!(x > 0)) return 0.0;
    if (x >= 1) return 1.0;
    if (x > 0.5) return 1.0 - beta_quarter_cdf(1.0 - x);
    // t = u^4 turns (t(1-t))^(-3/4) dt into 4 (1-u^4)^(-3/4) du, smooth for t <= 1/2.
    auto f = [](double u) { return 4.0 * std::pow(1.0 - u * u * u * u, -0.75); };
    const double upper = std::pow(x, 0.25);
    const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, upper, 15, 1e-14);
    return beta_quarter_normalizer() * integral;
}

double volume_growth_constant() {
    return std::pow(2.0, 1.25) * boost::math::tgamma(0.25) / (3.0 * std::sqrt(std::numbers::pi));
}

namespace {

template <class F>
double composite_gauss(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = 0;
    for (int i = 0; i < panels; ++i) s += boost::math::quadrature::gauss<double, 20>::integrate(f, a + i * h, a + (i + 1) * h);
    return s;
}

}  // namespace

double volume_growth_reference(double delta, int panels) {
    if (delta < 0) throw InputError("radius must be nonnegative");
    if (panels < 1) throw InputError("panel count must be positive");
    if (delta == 0) return 0.0;
    // l = w^2: int_0^inf l^(-1/2) e^(...) dl = 2 int_0^inf exp(-2 w^4 - u^2/(2 w^2)) dw;
    // the integrand is below e^-160 past w = 3.
    auto inner = [panels](double u) {
        auto g = [u](double w) { return w == 0 ? 0.0 : std::exp(-2 * w * w * w * w - u * u / (2 * w * w)); };
        return 2.0 * composite_gauss(g, 0.0, 3.0, panels);
    };
    auto outer = [&](double u) { return u * u * inner(u); };
    return 4.0 * std::sqrt(2.0 / std::numbers::pi) * composite_gauss(outer, 0.0, delta, std::max(1, panels / 8));
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("slope needs paired samples");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0 && y[i] > 0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    if (lx.size() < 2) throw InputError("slope needs two positive pairs");
    const double mx = mean(lx), my = mean(ly);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace cactus
