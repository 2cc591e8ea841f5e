#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace garchx {

struct FitOptions {
  int max_iter = 500;
  double grad_tol = 1e-7;
  int multi_start = 1;      ///< total number of starts (1 = just the given init)
  SeedSpec seed;            ///< drives the multi-start jitter
};

struct FitResult {
  ModelSpec spec;
  Theta theta_hat;
  double loglik = 0.0;      ///< maximized (1/n) sum l~_t (additive constant dropped)
  double kappa_hat = 0.0;   ///< (1/n) sum eps_hat_t^4 at theta_hat
  Eigen::MatrixXd a_matrix; ///< A_n at theta_hat
  Eigen::MatrixXd b_matrix; ///< B_n = (delta^2/4)(kappa_hat - 1) A_n^{-1}
  bool b_valid = false;     ///< false when A_n is numerically singular
  std::size_t n_obs = 0;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  bool at_boundary = false; ///< theta_hat within 1e-6 of a box face; B_n then unreliable
};

/// Volatility-targeting default start: omega = 0.1 * Var(R), alpha1 = 0.05,
/// beta1 = 0.85, lambda = 0.01, asymmetry parameters 0, all clamped into the
/// box.
Theta default_theta(const ModelSpec& spec, std::span<const double> returns,
                    std::vector<double> lower, std::vector<double> upper);

/// Maximizes the observed quasi-log-likelihood over the box of `init`.
/// Smooth families run projected quasi-Newton with the analytic score;
/// FGarch runs box-projected Nelder-Mead. With options.multi_start > 1,
/// additional starts are drawn uniformly in the box and the best optimum is
/// kept. Non-convergence is reported via the flag, never an exception.
FitResult fit(const ModelSpec& spec, const Theta& init, std::span<const double> returns,
              std::span<const double> exog, const FitOptions& options = {});

/// Ellipsoidal confidence region for a coordinate subset I at level 1-p:
///   n (theta_I - theta_hat_I)' B_I^{-1} (theta_I - theta_hat_I) <= chi2_{|I|}(1-p).
struct ConfidenceRegion {
  std::vector<std::size_t> index_set;
  Eigen::VectorXd center;
  Eigen::MatrixXd b_sub;
  Eigen::MatrixXd b_sub_inverse;
  double level = 0.0;
  double chi2_quantile = 0.0;
  std::size_t n_obs = 0;

  double quadratic_form(std::span<const double> theta_sub) const;
  bool contains(std::span<const double> theta_sub) const;

  /// Confidence interval of the pos-th member of the index set; for
  /// |I| = 1 this equals the classical normal interval.
  std::pair<double, double> interval(std::size_t pos) const;
};

ConfidenceRegion confidence_region(const FitResult& fit_result,
                                   const std::vector<std::size_t>& index_set, double p);

}  // namespace garchx
