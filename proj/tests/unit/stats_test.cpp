#include "doctest.h"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "cactus/errors.hpp"
#include "cactus/rng.hpp"
#include "cactus/stats.hpp"

using namespace cactus;

namespace {

// Same probability from the radial law of a 3-d Gaussian:
// 4 int_0^inf l exp(-2 l^2) P[chi^2_3 <= delta^2 / l] dl.
double volume_growth_oracle(double delta) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [delta](double l) {
        if (l <= 0) return 0.0;
        return 4 * l * std::exp(-2 * l * l) * boost::math::gamma_p(1.5, delta * delta / (2 * l));
    };
    return integrator.integrate(f, 1e-14);
}

}  // namespace

TEST_CASE("KS basics") {
    const std::vector<double> a{1, 2, 3, 4}, b{10, 11};
    CHECK(ks_two_sample(a, a) == 0);
    CHECK(ks_two_sample(a, b) == 1);
    CHECK(ks_two_sample(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 2}) == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, a), InputError);
    Rng rng(1);
    std::vector<double> u(100000);
    for (double& x : u) x = rng.uniform();
    CHECK(ks_vs_cdf(u, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.01);
}

TEST_CASE("summary statistics") {
    const std::vector<double> xs{4, 1, 3, 2};
    CHECK(mean(xs) == 2.5);
    CHECK(median(xs) == 2.5);
    CHECK(quantile(xs, 0) == 1);
    CHECK(quantile(xs, 1) == 4);
    CHECK(standard_error(xs) == doctest::Approx(std::sqrt(5.0 / 3 / 4)));
    const std::vector<double> x{1, 2, 4, 8}, y{3, 24, 192, 1536};
    CHECK(log_log_slope(x, y) == doctest::Approx(3.0));
}

TEST_CASE("Beta(1/4, 1/4) by quadrature against the incomplete beta function") {
    CHECK(beta_quarter_normalizer() == doctest::Approx(0.13484).epsilon(1e-4));
    CHECK(beta_quarter_normalizer() ==
          doctest::Approx(std::tgamma(0.5) / std::pow(std::tgamma(0.25), 2)).epsilon(1e-14));
    CHECK(beta_quarter_cdf(0.5) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(beta_quarter_cdf(0) == 0);
    CHECK(beta_quarter_cdf(1) == 1);
    for (double x = 0.001; x < 1; x += 0.0137) CHECK(std::abs(beta_quarter_cdf(x) - boost::math::ibeta(0.25, 0.25, x)) < 1e-10);
}

TEST_CASE("volume growth reference") {
    CHECK(volume_growth_constant() == doctest::Approx(1.6217).epsilon(1e-4));
    CHECK(volume_growth_constant() ==
          doctest::Approx(std::pow(2.0, 1.25) * std::tgamma(0.25) / (3 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
    CHECK(volume_growth_reference(0) == 0);
    for (double d : {0.05, 0.1, 0.2, 0.5}) {
        const double p = volume_growth_reference(d);
        CHECK(std::abs(volume_growth_reference(d, 128) - p) < 1e-8);
        CHECK(std::abs(p - volume_growth_oracle(d)) < 1e-9 * std::max(1.0, p) + 1e-12);
    }
    const double tiny = 1e-3;
    CHECK(volume_growth_reference(tiny) / std::pow(tiny, 3) == doctest::Approx(volume_growth_constant()).epsilon(0.01));
    CHECK(volume_growth_oracle(50) == doctest::Approx(1).epsilon(1e-9));
}
