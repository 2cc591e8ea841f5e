#include "core/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace garchx {

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double value : v) s += value;
  return s / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("variance: need at least two values");
  const double m = mean(v);
  double s = 0.0;
  for (double value : v) s += (value - m) * (value - m);
  return s / static_cast<double>(v.size() - 1);
}

double stddev(std::span<const double> v) { return std::sqrt(variance(v)); }

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty sample");
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (n % 2 == 1) return v[mid];
  const double hi = v[mid];
  std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
  return 0.5 * (hi + v[mid - 1]);
}

double nearest_rank_lower_quantile(std::vector<double> sample, double level) {
  if (sample.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("quantile: level must be in (0,1)");
  const std::size_t n = sample.size();
  std::size_t k = static_cast<std::size_t>(std::ceil((1.0 - level) * static_cast<double>(n)));
  if (k < 1) k = 1;
  if (k > n) k = n;
  std::nth_element(sample.begin(), sample.begin() + (k - 1), sample.end());
  return sample[k - 1];
}

WelchTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_test: need at least two values per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = variance(a) / na;
  const double vb = variance(b) / nb;
  const double se2 = va + vb;
  WelchTestResult result;
  if (se2 <= 0.0) {
    result.t = 0.0;
    result.df = na + nb - 2.0;
    result.p_value = 1.0;
    return result;
  }
  result.t = (mean(a) - mean(b)) / std::sqrt(se2);
  result.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  result.p_value = 2.0 * (1.0 - students_t_cdf(result.df, std::fabs(result.t)));
  return result;
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("ols_fit: need matching samples of size >= 3");
  const double n = static_cast<double>(x.size());
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw std::invalid_argument("ols_fit: degenerate regressor");
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.slope_se = x.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  return fit;
}

double moving_block_bootstrap_se(std::span<const double> series, std::size_t block_length,
                                 std::size_t n_boot, SeedSpec seed,
                                 double (*statistic)(std::vector<double>, double),
                                 double statistic_arg) {
  const std::size_t n = series.size();
  if (block_length == 0 || block_length > n)
    throw std::invalid_argument("moving_block_bootstrap_se: bad block length");
  if (n_boot < 2) throw std::invalid_argument("moving_block_bootstrap_se: n_boot too small");
  const std::size_t n_starts = n - block_length + 1;
  const std::size_t n_blocks = (n + block_length - 1) / block_length;
  RngStream stream(seed);
  std::vector<double> stats(n_boot);
  std::vector<double> resample;
  resample.reserve(n_blocks * block_length);
  for (std::size_t b = 0; b < n_boot; ++b) {
    resample.clear();
    for (std::size_t k = 0; k < n_blocks; ++k) {
      const std::size_t start =
          static_cast<std::size_t>(stream.uniform() * static_cast<double>(n_starts));
      for (std::size_t j = 0; j < block_length && resample.size() < n; ++j)
        resample.push_back(series[start + j]);
    }
    stats[b] = statistic(resample, statistic_arg);
  }
  return stddev(stats);
}

double chi_squared_quantile(double df, double p) {
  const boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::quantile(dist, p);
}

double students_t_cdf(double df, double x) {
  const boost::math::students_t_distribution<double> dist(df);
  return boost::math::cdf(dist, x);
}

}  // namespace garchx
