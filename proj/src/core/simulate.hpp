#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "core/model.hpp"
#include "core/stochastic.hpp"

namespace garchx {

/// Thrown when the volatility recursion leaves the finite range (explosive
/// parameter regions are legitimate inputs for condition exploration, so
/// this is a recoverable, reportable condition).
class PathDivergedError : public std::runtime_error {
 public:
  PathDivergedError(std::size_t step, double value);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

enum class Sigma0Kind { PointMass, LogNormal };

/// Initial condition for sigma~_0^delta. PointMass with value < 0 means
/// "use omega", the likelihood convention.
struct Sigma0Spec {
  Sigma0Kind kind = Sigma0Kind::PointMass;
  double value = -1.0;
  double log_mean = 0.0;   ///< LogNormal parameters (of log sigma_0^delta)
  double log_sdev = 1.0;
};

struct SimConfig {
  long horizon = 0;          ///< T, number of returned steps
  Sigma0Spec sigma0;
  double r0 = 0.0;           ///< lagged return seeding the first step
  long burn_in = 0;          ///< extra leading steps simulated and discarded
  SeedSpec seed;

  void validate() const;
};

/// One simulated path. Slot i holds (R, sigma^delta, eps) of step i and the
/// covariate that entered that step's volatility, so
///   vol_delta[i] = vol_step_obs(ret[i-1], exog[i], vol_delta[i-1])
///   returns[i]   = vol_delta[i]^(1/delta) * innovations[i]
/// hold exactly over the stored arrays.
struct PathSample {
  std::vector<double> returns;
  std::vector<double> vol_delta;
  std::vector<double> exog;
  std::vector<double> innovations;
  SeedSpec seed;
};

/// Simulates one path of cfg.horizon steps (after cfg.burn_in discarded
/// ones). Deterministic per seed; the innovation and exogenous substreams
/// are independent.
PathSample simulate_path(const ModelSpec& spec, const Theta& theta,
                         const InnovationDist& innovation, const ExogProcess& exogenous,
                         const SimConfig& cfg);

/// n_paths independent replications on stream_id = base, base+1, ...; the
/// result is identical for any worker count.
std::vector<PathSample> simulate_batch(const ModelSpec& spec, const Theta& theta,
                                       const InnovationDist& innovation,
                                       const ExogProcess& exogenous, const SimConfig& cfg,
                                       std::size_t n_paths, unsigned n_threads = 0);

/// Guard threshold for the divergence check.
inline constexpr double kVolDivergenceLimit = 1e300;

/// Default burn-in for consumers that want to treat a path as stationary.
inline constexpr long kStationaryBurnIn = 5000;

}  // namespace garchx
