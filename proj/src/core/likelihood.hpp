#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "core/model.hpp"

namespace garchx {

/// What evaluate_likelihood should compute beyond the objective value.
struct LikelihoodRequest {
  bool want_score = false;
  bool want_hessian = false;
  bool want_a_matrix = false;     ///< A_n = (1/n) sum (1/s_t^2) ds_t ds_t'
  bool want_score_outer = false;  ///< (1/n) sum (dl_t/dtheta)(dl_t/dtheta)'
  bool want_kappa = false;        ///< kappa_hat = (1/n) sum (R_t/sigma_t)^4
  bool keep_sigma = false;
  double sigma0_delta = -1.0;     ///< seed for sigma~_0^delta; < 0 means omega
};

struct LikelihoodEval {
  double neg_loglik = 0.0;             ///< (1/n) sum [log sigma~_t^2 + R_t^2/sigma~_t^2]
  std::vector<double> score;           ///< gradient of +(1/n) sum l~_t (the paper's sign)
  Eigen::MatrixXd hessian;             ///< Hessian of the same
  Eigen::MatrixXd a_matrix;
  Eigen::MatrixXd score_outer;
  double kappa_hat = 0.0;
  std::vector<double> sigma_delta;
};

/// Gaussian quasi-log-likelihood of observed data, volatility recursion
/// seeded at sigma~_0^delta = omega, with forward accumulation of the first
/// and second volatility derivatives for the smooth families.
///
/// Data layout: row i of (R, x) carries the return of step i and the
/// covariate entering that step's volatility; row 0 is the recursion seed
/// row (its volatility is the seed value, independent of the data).
///
/// Derivatives are rejected for FGarch (not differentiable in eta2).
LikelihoodEval evaluate_likelihood(const ModelSpec& spec, const Theta& theta,
                                   std::span<const double> returns,
                                   std::span<const double> exog,
                                   const LikelihoodRequest& request = {});

double neg_loglik(const ModelSpec& spec, const Theta& theta, std::span<const double> returns,
                  std::span<const double> exog);

/// Gradient of (1/n) sum l~_t. Throws std::invalid_argument for FGarch.
std::vector<double> score(const ModelSpec& spec, const Theta& theta,
                          std::span<const double> returns, std::span<const double> exog);

/// Hessian of (1/n) sum l~_t, symmetric by construction.
Eigen::MatrixXd hessian(const ModelSpec& spec, const Theta& theta,
                        std::span<const double> returns, std::span<const double> exog);

}  // namespace garchx
