#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cactus {

// Sup distance between the two empirical CDFs. Throws InputError on empty input.
double ks_two_sample(std::span<const double> xs, std::span<const double> ys);
// Sup distance between the empirical CDF of xs and `cdf`.
double ks_vs_cdf(std::span<const double> xs, const std::function<double(double)>& cdf);

double mean(std::span<const double> xs);
// Standard error of the mean, sample standard deviation over sqrt(n).
double standard_error(std::span<const double> xs);
// Linear-interpolated quantile, p in [0, 1].
double quantile(std::vector<double> xs, double p);
double median(std::vector<double> xs);

// Density normaliser Gamma(1/2) / Gamma(1/4)^2 of Beta(1/4, 1/4).
double beta_quarter_normalizer();
// CDF of Beta(1/4, 1/4) by adaptive quadrature of its density.
double beta_quarter_cdf(double x);

// 2^(5/4) Gamma(1/4) / (3 sqrt(pi)), the small-radius constant of the
// probability that two mass points of the Brownian cactus are within delta.
double volume_growth_constant();
// 4 sqrt(2/pi) int_0^delta u^2 int_0^inf l^(-1/2) exp(-2 l^2 - u^2/(2l)) dl du
// by composite 20-point Gauss-Legendre with `panels` panels per integral.
double volume_growth_reference(double delta, int panels = 64);

// Least-squares slope of log y against log x over positive pairs.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace cactus
