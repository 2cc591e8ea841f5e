#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>

#include "core/model.hpp"
#include "core/stochastic.hpp"

namespace garchx {

enum class ConditionVerdict { Satisfied, Violated, Inconclusive };

/// Monte-Carlo estimate with its standard error.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Report on the moment conditions behind stationarity (exponent alpha in
/// (0,1]) or existence of the m*delta moment (integer order m). The verdict
/// is driven by E[c(eps)^a] against 1 with a 3-standard-error exclusion
/// band; closed forms replace the band when available.
struct ConditionReport {
  double exponent = 1.0;          ///< alpha, or the integer order m
  McEstimate c_term;              ///< E[c(eps)^a]
  McEstimate g_term;              ///< E[g(eps)^a]
  McEstimate u_term;              ///< E[u(x)^a]
  McEstimate eps_term;            ///< E[|eps|^(delta a)]
  std::optional<double> c_closed_form;
  std::optional<double> g_closed_form;
  ConditionVerdict verdict = ConditionVerdict::Inconclusive;
};

/// Prop.-3.1-style check at exponent alpha in (0,1].
ConditionReport check_stationarity(const ModelSpec& spec, const Theta& theta, double alpha,
                                   const InnovationDist& innovation, const ExogProcess& exogenous,
                                   std::size_t n_mc, SeedSpec seed = {});

/// Prop.-3.3-style check of E|R|^(m delta) < infinity via E[c(eps)^m] vs 1.
ConditionReport check_moment(const ModelSpec& spec, const Theta& theta, unsigned m,
                             const InnovationDist& innovation, const ExogProcess& exogenous,
                             std::size_t n_mc, SeedSpec seed = {});

struct ForgettingRate {
  double slope = 0.0;      ///< OLS slope of log mean |gap|^alpha on t
  double slope_se = 0.0;
  double rho_hat = 0.0;    ///< exp(slope)
  double r2 = 0.0;
  bool degenerate = false; ///< gaps identically zero (c == 0 model)
};

/// Measures the geometric forgetting of the initial volatility: paired
/// paths share the innovation and covariate streams but start at
/// sigma0^delta = omega versus gap_factor * omega; the decay rate of
/// E|gap_t|^alpha is read off a log-linear regression over t = 1..horizon.
ForgettingRate forgetting_rate(const ModelSpec& spec, const Theta& theta, double alpha,
                               const InnovationDist& innovation, const ExogProcess& exogenous,
                               std::size_t n_replications, std::size_t horizon,
                               double gap_factor = 50.0, SeedSpec seed = {},
                               unsigned n_threads = 0);

/// Geometric-ergodicity certificate for the T-GARCH example with
/// x_t = gamma_shift + eta_t: fixed point of the two-dimensional state map,
/// its derivative matrices, the rank condition, and a Monte-Carlo check of
/// the one-step drift inequality for V(y) = 1 + (|y1| + |y2|)^r.
struct ErgodicityFixedPoint {
  Eigen::Vector2d y_star;
  Eigen::Vector2d a_star;
  Eigen::Matrix2d phi;        ///< dG/dy at (y*, a*)
  Eigen::Matrix2d theta_mat;  ///< dG/da at (y*, a*)
  bool rank_ok = false;       ///< [Phi | Theta] has rank 2
  double fixed_point_residual = 0.0;
  double drift_exponent = 0.0;
  double drift_kappa = 0.0;       ///< constant subtracted in the ratio
  double drift_ratio_sup = 0.0;   ///< sup over the grid of (E V(Y1) - kappa) / V(y)
  bool drift_ok = false;          ///< drift_ratio_sup < 1
};

struct TgarchCertificateOptions {
  std::size_t n_mc = 20000;        ///< draws per grid state
  std::size_t grid_points = 20;    ///< per axis (sigma log-spaced, x linear)
  double sigma_max = 100.0;
  double x_max = 100.0;
  SeedSpec seed;
  unsigned n_threads = 0;
};

ErgodicityFixedPoint tgarch_ergodicity_certificate(const Theta& theta_tgarch, double gamma_shift,
                                                   double drift_exponent,
                                                   const TgarchCertificateOptions& options = {});

}  // namespace garchx
