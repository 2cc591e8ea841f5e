#include "core/likelihood.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace garchx {

namespace {

constexpr std::size_t kMaxParams = 6;

using Vec = std::array<double, kMaxParams>;
using Mat = std::array<std::array<double, kMaxParams>, kMaxParams>;

void check_data(std::span<const double> returns, std::span<const double> exog) {
  if (returns.size() != exog.size())
    throw std::invalid_argument("likelihood: returns/exog length mismatch");
  if (returns.size() < 10) throw std::invalid_argument("likelihood: need at least 10 rows");
  for (std::size_t i = 0; i < returns.size(); ++i) {
    if (!std::isfinite(returns[i]) || !std::isfinite(exog[i]))
      throw std::invalid_argument("likelihood: non-finite data at row " + std::to_string(i));
  }
}

// First/second derivatives of the return-driven ARCH term; da and d2a must
// be zeroed by the caller. Only the non-constant coordinates are written.
void arch_derivs(const ModelSpec& spec, const Theta& theta, double r, Vec& da, Mat* d2a) {
  switch (spec.family) {
    case Family::StandardGarch:
      da[2] = r * r;
      return;
    case Family::GjrGarch:
      da[2] = r * r;
      da[4] = r < 0.0 ? r * r : 0.0;
      return;
    case Family::TGarch:
      da[2] = r > 0.0 ? r : 0.0;
      da[3] = r < 0.0 ? -r : 0.0;
      return;
    case Family::ApArch: {
      if (r == 0.0) return;
      const double v = std::fabs(r) - theta[4] * r;  // > 0 since |eta1| < 1
      const double d = spec.delta;
      const double v_pow = std::pow(v, d);
      const double v_pow1 = std::pow(v, d - 1.0);
      da[2] = v_pow;
      da[4] = -theta[2] * d * r * v_pow1;
      if (d2a) {
        (*d2a)[2][4] = (*d2a)[4][2] = -d * r * v_pow1;
        (*d2a)[4][4] = theta[2] * d * (d - 1.0) * r * r * std::pow(v, d - 2.0);
      }
      return;
    }
    case Family::FGarch:
      throw std::invalid_argument(
          "likelihood: FGarch has no analytic derivatives; use derivative-free fit");
  }
}

}  // namespace

LikelihoodEval evaluate_likelihood(const ModelSpec& spec, const Theta& theta,
                                   std::span<const double> returns,
                                   std::span<const double> exog,
                                   const LikelihoodRequest& request) {
  spec.validate();
  theta.validate(spec);
  check_data(returns, exog);

  const bool want_derivs = request.want_score || request.want_hessian ||
                           request.want_a_matrix || request.want_score_outer;
  if (want_derivs && spec.family == Family::FGarch)
    throw std::invalid_argument(
        "likelihood: FGarch has no analytic derivatives; use derivative-free fit");

  const std::size_t n = returns.size();
  const std::size_t m = spec.param_count();
  const double delta = spec.delta;
  const double two_over_delta = 2.0 / delta;
  const double omega = theta[0];
  const double lambda = theta[1];
  const double beta = theta[spec.beta_index()];
  const std::size_t beta_ix = spec.beta_index();
  const bool fgarch = spec.family == Family::FGarch;

  LikelihoodEval eval;
  if (request.want_score) eval.score.assign(m, 0.0);
  Mat hess_sum{};
  Mat a_sum{};
  Mat outer_sum{};
  if (request.keep_sigma) eval.sigma_delta.resize(n);

  double s = request.sigma0_delta < 0.0 ? omega : request.sigma0_delta;
  Vec ds{};
  Mat d2s{};
  ds[0] = 1.0;  // d sigma~_0^delta / d omega for the omega seed
  if (request.sigma0_delta >= 0.0) ds[0] = 0.0;

  double negll = 0.0;
  double kappa_sum = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const double r = returns[i - 1];
      const double w = u1_eval(spec, exog[i]);
      if (fgarch) {
        const double eps = r / std::pow(s, 1.0 / delta);
        s = omega + lambda * w + c_eval(spec, theta, eps) * s;
      } else {
        const double g_obs = g_eval(spec, theta, r, VolInput::Return);
        if (want_derivs) {
          Vec da{};
          Mat d2a{};
          arch_derivs(spec, theta, r, da, request.want_hessian ? &d2a : nullptr);
          Vec ds_new;
          for (std::size_t k = 0; k < m; ++k) ds_new[k] = da[k] + beta * ds[k];
          ds_new[0] += 1.0;
          ds_new[1] += w;
          ds_new[beta_ix] += s;
          if (request.want_hessian) {
            Mat d2s_new;
            for (std::size_t a = 0; a < m; ++a)
              for (std::size_t b = a; b < m; ++b)
                d2s_new[a][b] = d2a[a][b] + beta * d2s[a][b];
            for (std::size_t k = 0; k < m; ++k) {
              // cross terms dc/dbeta * ds_prev, symmetrised
              if (k <= beta_ix)
                d2s_new[k][beta_ix] += ds[k];
              else
                d2s_new[beta_ix][k] += ds[k];
            }
            d2s_new[beta_ix][beta_ix] += ds[beta_ix];  // both N4 and N5 hit (beta,beta)
            for (std::size_t a = 0; a < m; ++a)
              for (std::size_t b = a; b < m; ++b)
                d2s[a][b] = d2s_new[a][b];
          }
          ds = ds_new;
        }
        s = g_obs + lambda * w + beta * s;
      }
    }

    if (!std::isfinite(s) || s <= 0.0)
      throw std::runtime_error("likelihood: volatility recursion left the valid range at row " +
                               std::to_string(i));
    if (request.keep_sigma) eval.sigma_delta[i] = s;

    const double log_sigma2 = two_over_delta * std::log(s);
    const double sigma2 = two_over_delta == 1.0   ? s
                          : two_over_delta == 2.0 ? s * s
                                                  : std::pow(s, two_over_delta);
    const double z = returns[i] * returns[i] / sigma2;
    negll += log_sigma2 + z;
    if (request.want_kappa) kappa_sum += z * z;

    if (want_derivs) {
      const double common = two_over_delta / s;
      if (request.want_score) {
        const double coeff = common * (z - 1.0);
        for (std::size_t k = 0; k < m; ++k) eval.score[k] += coeff * ds[k];
      }
      if (request.want_hessian) {
        const double quad = -common / s * ((2.0 + delta) / delta * z - 1.0);
        const double lin = common * (z - 1.0);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = a; b < m; ++b)
            hess_sum[a][b] += quad * ds[a] * ds[b] + lin * d2s[a][b];
      }
      if (request.want_a_matrix) {
        const double inv_s2 = 1.0 / (s * s);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = a; b < m; ++b)
            a_sum[a][b] += inv_s2 * ds[a] * ds[b];
      }
      if (request.want_score_outer) {
        const double coeff = common * (z - 1.0);
        const double coeff2 = coeff * coeff;
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = a; b < m; ++b)
            outer_sum[a][b] += coeff2 * ds[a] * ds[b];
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  eval.neg_loglik = negll * inv_n;
  if (request.want_kappa) eval.kappa_hat = kappa_sum * inv_n;
  if (request.want_score)
    for (auto& v : eval.score) v *= inv_n;
  if (request.want_hessian) {
    eval.hessian.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b)
        eval.hessian(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            eval.hessian(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) =
                hess_sum[a][b] * inv_n;
  }
  if (request.want_a_matrix) {
    eval.a_matrix.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b)
        eval.a_matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            eval.a_matrix(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) =
                a_sum[a][b] * inv_n;
  }
  if (request.want_score_outer) {
    eval.score_outer.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b)
        eval.score_outer(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            eval.score_outer(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) =
                outer_sum[a][b] * inv_n;
  }
  return eval;
}

double neg_loglik(const ModelSpec& spec, const Theta& theta, std::span<const double> returns,
                  std::span<const double> exog) {
  return evaluate_likelihood(spec, theta, returns, exog).neg_loglik;
}

std::vector<double> score(const ModelSpec& spec, const Theta& theta,
                          std::span<const double> returns, std::span<const double> exog) {
  LikelihoodRequest request;
  request.want_score = true;
  return evaluate_likelihood(spec, theta, returns, exog, request).score;
}

Eigen::MatrixXd hessian(const ModelSpec& spec, const Theta& theta,
                        std::span<const double> returns, std::span<const double> exog) {
  LikelihoodRequest request;
  request.want_hessian = true;
  return evaluate_likelihood(spec, theta, returns, exog, request).hessian;
}

}  // namespace garchx
