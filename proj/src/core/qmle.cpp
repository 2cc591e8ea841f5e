#include "core/qmle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/likelihood.hpp"
#include "core/optimize.hpp"
#include "core/stats.hpp"

namespace garchx {

namespace {

Theta with_values(const Theta& box, std::vector<double> values) {
  Theta theta = box;
  theta.values = std::move(values);
  for (std::size_t i = 0; i < theta.values.size(); ++i)
    theta.values[i] = std::clamp(theta.values[i], theta.lower[i], theta.upper[i]);
  return theta;
}

// Finite-difference d sigma~_t^delta / d theta for families without analytic
// derivatives; steps shrink to one-sided near a box face.
Eigen::MatrixXd fd_a_matrix(const ModelSpec& spec, const Theta& theta,
                            std::span<const double> returns, std::span<const double> exog) {
  const std::size_t m = spec.param_count();
  const std::size_t n = returns.size();
  LikelihoodRequest request;
  request.keep_sigma = true;
  const std::vector<double> base = evaluate_likelihood(spec, theta, returns, exog, request)
                                       .sigma_delta;
  std::vector<std::vector<double>> dsigma(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double h0 = 1e-5 * std::max(1.0, std::fabs(theta[k]));
    const double room_up = theta.upper[k] - theta[k];
    const double room_dn = theta[k] - theta.lower[k];
    const double hp = std::min(h0, room_up);
    const double hm = std::min(h0, room_dn);
    if (hp + hm <= 0.0) {
      dsigma[k].assign(n, 0.0);  // coordinate pinned by the box
      continue;
    }
    std::vector<double> up = base;
    std::vector<double> dn = base;
    if (hp > 0.0) {
      Theta probe = theta;
      probe.values[k] += hp;
      up = evaluate_likelihood(spec, probe, returns, exog, request).sigma_delta;
    }
    if (hm > 0.0) {
      Theta probe = theta;
      probe.values[k] -= hm;
      dn = evaluate_likelihood(spec, probe, returns, exog, request).sigma_delta;
    }
    dsigma[k].resize(n);
    const double denom = hp + hm;
    for (std::size_t t = 0; t < n; ++t) dsigma[k][t] = (up[t] - dn[t]) / denom;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                            static_cast<Eigen::Index>(m));
  for (std::size_t t = 0; t < n; ++t) {
    const double inv_s2 = 1.0 / (base[t] * base[t]);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            inv_s2 * dsigma[i][t] * dsigma[j][t];
  }
  a /= static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
  return a;
}

}  // namespace

Theta default_theta(const ModelSpec& spec, std::span<const double> returns,
                    std::vector<double> lower, std::vector<double> upper) {
  spec.validate();
  const std::size_t m = spec.param_count();
  if (lower.size() != m || upper.size() != m)
    throw std::invalid_argument("default_theta: bound lengths must match the family");
  std::vector<double> values(m, 0.0);
  const double var_r = returns.size() >= 2 ? variance(returns) : 1.0;
  values[0] = 0.1 * var_r;
  values[1] = 0.01;
  switch (spec.family) {
    case Family::StandardGarch:
    case Family::GjrGarch:
    case Family::ApArch:
      values[2] = 0.05;
      values[3] = 0.85;
      break;
    case Family::TGarch:
      values[2] = 0.05;
      values[3] = 0.05;
      values[4] = 0.85;
      break;
    case Family::FGarch:
      values[2] = 0.05;
      values[3] = 0.85;
      break;
  }
  Theta theta{std::move(values), std::move(lower), std::move(upper)};
  for (std::size_t i = 0; i < m; ++i)
    theta.values[i] = std::clamp(theta.values[i], theta.lower[i], theta.upper[i]);
  theta.validate(spec);
  return theta;
}

FitResult fit(const ModelSpec& spec, const Theta& init, std::span<const double> returns,
              std::span<const double> exog, const FitOptions& options) {
  spec.validate();
  init.validate(spec);
  if (options.multi_start < 1) throw std::invalid_argument("fit: multi_start must be >= 1");
  const std::size_t m = spec.param_count();
  const bool smooth = spec.family != Family::FGarch;

  std::vector<std::vector<double>> starts;
  starts.push_back(init.values);
  RngStream jitter(options.seed, 3);
  for (int k = 1; k < options.multi_start; ++k) {
    std::vector<double> start(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double span_i = init.upper[i] - init.lower[i];
      start[i] = span_i > 0.0 ? init.lower[i] + jitter.uniform() * span_i : init.lower[i];
    }
    starts.push_back(std::move(start));
  }

  BoxOptimOptions optim_options;
  optim_options.max_iter = options.max_iter;
  optim_options.grad_tol = options.grad_tol;

  BoxOptimResult best;
  bool have_best = false;
  for (const auto& start : starts) {
    BoxOptimResult run;
    if (smooth) {
      ObjectiveWithGrad objective = [&](const std::vector<double>& v,
                                        std::vector<double>& grad) {
        LikelihoodRequest request;
        request.want_score = true;
        const LikelihoodEval eval =
            evaluate_likelihood(spec, with_values(init, v), returns, exog, request);
        grad.resize(m);
        for (std::size_t i = 0; i < m; ++i) grad[i] = -eval.score[i];
        return eval.neg_loglik;
      };
      run = minimize_projected_bfgs(objective, start, init.lower, init.upper, optim_options);
    } else {
      Objective objective = [&](const std::vector<double>& v) {
        return evaluate_likelihood(spec, with_values(init, v), returns, exog).neg_loglik;
      };
      BoxOptimOptions nm_options = optim_options;
      nm_options.max_iter = std::max(options.max_iter, 2000);
      run = minimize_nelder_mead_box(objective, start, init.lower, init.upper, nm_options);
    }
    if (!have_best || run.f < best.f) {
      best = std::move(run);
      have_best = true;
    }
  }

  FitResult result;
  result.spec = spec;
  result.theta_hat = with_values(init, best.x);
  result.loglik = -best.f;
  result.n_obs = returns.size();
  result.iterations = best.iterations;
  result.converged = best.converged;
  result.grad_norm = best.grad_norm;

  for (std::size_t i = 0; i < m; ++i) {
    if (result.theta_hat[i] - init.lower[i] < 1e-6 || init.upper[i] - result.theta_hat[i] < 1e-6)
      result.at_boundary = true;
  }

  LikelihoodRequest request;
  request.want_kappa = true;
  request.want_a_matrix = smooth;
  const LikelihoodEval eval =
      evaluate_likelihood(spec, result.theta_hat, returns, exog, request);
  result.kappa_hat = eval.kappa_hat;
  result.a_matrix = smooth ? eval.a_matrix : fd_a_matrix(spec, result.theta_hat, returns, exog);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(result.a_matrix);
  if (lu.isInvertible()) {
    const double scale = spec.delta * spec.delta / 4.0 * (result.kappa_hat - 1.0);
    result.b_matrix = scale * lu.inverse();
    result.b_valid = true;
  } else {
    result.b_matrix = Eigen::MatrixXd();
    result.b_valid = false;
  }
  return result;
}

double ConfidenceRegion::quadratic_form(std::span<const double> theta_sub) const {
  if (theta_sub.size() != index_set.size())
    throw std::invalid_argument("ConfidenceRegion: wrong subset dimension");
  Eigen::VectorXd d(static_cast<Eigen::Index>(theta_sub.size()));
  for (std::size_t i = 0; i < theta_sub.size(); ++i)
    d(static_cast<Eigen::Index>(i)) = theta_sub[i] - center(static_cast<Eigen::Index>(i));
  return static_cast<double>(n_obs) * d.dot(b_sub_inverse * d);
}

bool ConfidenceRegion::contains(std::span<const double> theta_sub) const {
  return quadratic_form(theta_sub) <= chi2_quantile;
}

std::pair<double, double> ConfidenceRegion::interval(std::size_t pos) const {
  if (pos >= index_set.size()) throw std::invalid_argument("ConfidenceRegion: bad position");
  const double half = std::sqrt(chi_squared_quantile(1.0, level) *
                                b_sub(static_cast<Eigen::Index>(pos), static_cast<Eigen::Index>(pos)) /
                                static_cast<double>(n_obs));
  const double c = center(static_cast<Eigen::Index>(pos));
  return {c - half, c + half};
}

ConfidenceRegion confidence_region(const FitResult& fit_result,
                                   const std::vector<std::size_t>& index_set, double p) {
  if (index_set.empty()) throw std::invalid_argument("confidence_region: empty index set");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("confidence_region: p must be in (0,1)");
  if (!fit_result.b_valid)
    throw std::invalid_argument("confidence_region: fit has no valid covariance (A_n singular)");
  const std::size_t m = fit_result.spec.param_count();
  const std::size_t k = index_set.size();
  for (std::size_t idx : index_set)
    if (idx >= m) throw std::invalid_argument("confidence_region: index out of range");

  ConfidenceRegion region;
  region.index_set = index_set;
  region.level = 1.0 - p;
  region.n_obs = fit_result.n_obs;
  region.center.resize(static_cast<Eigen::Index>(k));
  region.b_sub.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    region.center(static_cast<Eigen::Index>(i)) = fit_result.theta_hat[index_set[i]];
    for (std::size_t j = 0; j < k; ++j)
      region.b_sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          fit_result.b_matrix(static_cast<Eigen::Index>(index_set[i]),
                              static_cast<Eigen::Index>(index_set[j]));
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(region.b_sub);
  if (!lu.isInvertible())
    throw std::invalid_argument("confidence_region: B sub-matrix is singular");
  region.b_sub_inverse = lu.inverse();
  region.chi2_quantile = chi_squared_quantile(static_cast<double>(k), region.level);
  return region;
}

}  // namespace garchx
