#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/rng.hpp"

namespace garchx {

double mean(std::span<const double> v);
double variance(std::span<const double> v);  ///< unbiased (n-1 denominator)
double stddev(std::span<const double> v);
double median(std::vector<double> v);

/// Empirical lower quantile by the nearest-rank rule: the k-th smallest
/// value with k = ceil((1 - level) * n), 1-based. level in (0,1), e.g. 0.99
/// selects the 1% left-tail order statistic.
double nearest_rank_lower_quantile(std::vector<double> sample, double level);

struct WelchTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Two-sample two-sided t-test with the Welch-Satterthwaite correction.
WelchTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_se = 0.0;
};

OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

/// Standard error of a statistic of a serially dependent series via the
/// moving-block bootstrap (overlapping blocks of the given length).
double moving_block_bootstrap_se(std::span<const double> series, std::size_t block_length,
                                 std::size_t n_boot, SeedSpec seed,
                                 double (*statistic)(std::vector<double>, double),
                                 double statistic_arg);

double chi_squared_quantile(double df, double p);
double students_t_cdf(double df, double x);

}  // namespace garchx
