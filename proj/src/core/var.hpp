#pragma once

#include <cstdint>
#include <vector>

#include "core/model.hpp"
#include "core/stochastic.hpp"

namespace garchx {

enum class VarMethod { IndependentPaths, ErgodicSinglePath };

/// Value-at-risk request. burn_in (N_b) applies to both methods: method 2
/// discards the first N_b returns of its single long path; method 1
/// simulates each path for N_b + horizon steps and sums the last horizon
/// returns, so that with N_b > 0 both methods sample the stationary
/// h-period return law and are comparable (with N_b = 0, method 1 is the
/// plain conditional Monte Carlo from the given start state).
struct VarRequest {
  double level = 0.99;           ///< e.g. 0.99 for the 99% VaR
  long horizon = 10;             ///< h, steps
  std::size_t n = 100000;        ///< sample count (paths or windows)
  long burn_in = 1000;           ///< N_b
  VarMethod method = VarMethod::IndependentPaths;
  double sigma0_delta = -1.0;    ///< start state; < 0 means omega
  double r0 = 0.0;
  SeedSpec seed;
  unsigned n_threads = 0;

  void validate() const;
};

struct VarResult {
  double var_logreturn = 0.0;    ///< empirical (1-level) quantile of the h-period log return
  double var_return = 0.0;       ///< exp(var_logreturn) - 1
  double var_value = 0.0;        ///< portfolio_value * var_return
  std::uint64_t draws_used = 0;  ///< cost accounting: 2hn (method 1), 2(N_b+h-1+n) (method 2)
  VarMethod method = VarMethod::IndependentPaths;
  double runtime_seconds = 0.0;
  double portfolio_value = 1.0;
};

VarResult var_independent(const ModelSpec& spec, const Theta& theta,
                          const InnovationDist& innovation, const ExogProcess& exogenous,
                          const VarRequest& request, double portfolio_value = 1.0);

VarResult var_ergodic(const ModelSpec& spec, const Theta& theta,
                      const InnovationDist& innovation, const ExogProcess& exogenous,
                      const VarRequest& request, double portfolio_value = 1.0);

VarResult compute_var(const ModelSpec& spec, const Theta& theta,
                      const InnovationDist& innovation, const ExogProcess& exogenous,
                      const VarRequest& request, double portfolio_value = 1.0);

struct MethodComparison {
  std::size_t reps = 0;
  std::vector<double> var_samples_m1;
  std::vector<double> var_samples_m2;
  double t_stat = 0.0;
  double p_value = 1.0;
};

/// Runs both methods `reps` times on independent seeds and Welch-tests the
/// two VaR samples against each other.
MethodComparison compare_methods(const ModelSpec& spec, const Theta& theta,
                                 const InnovationDist& innovation, const ExogProcess& exogenous,
                                 const VarRequest& request, std::size_t reps);

/// The cost-model draw counts of the two methods.
std::uint64_t draws_independent(long horizon, std::size_t n);
std::uint64_t draws_ergodic(long burn_in, long horizon, std::size_t n);

}  // namespace garchx
