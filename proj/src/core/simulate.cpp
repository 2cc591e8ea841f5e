#include "core/simulate.hpp"

#include <cmath>
#include <string>

#include "core/parallel.hpp"

namespace garchx {

PathDivergedError::PathDivergedError(std::size_t step, double value)
    : std::runtime_error("path diverged at t=" + std::to_string(step) +
                         " (sigma^delta=" + std::to_string(value) + ")"),
      step_(step) {}

void SimConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("SimConfig: horizon must be >= 1");
  if (burn_in < 0) throw std::invalid_argument("SimConfig: burn_in must be non-negative");
  if (sigma0.kind == Sigma0Kind::PointMass && sigma0.value == 0.0)
    throw std::invalid_argument("SimConfig: sigma0 point mass must be positive (or < 0 for omega)");
}

namespace {

double initial_sigma_delta(const Sigma0Spec& sigma0, const Theta& theta, RngStream& stream) {
  switch (sigma0.kind) {
    case Sigma0Kind::PointMass:
      return sigma0.value < 0.0 ? theta[0] : sigma0.value;
    case Sigma0Kind::LogNormal:
      return std::exp(sigma0.log_mean + sigma0.log_sdev * stream.normal());
  }
  throw std::invalid_argument("initial_sigma_delta: unknown kind");
}

}  // namespace

PathSample simulate_path(const ModelSpec& spec, const Theta& theta,
                         const InnovationDist& innovation, const ExogProcess& exogenous,
                         const SimConfig& cfg) {
  spec.validate();
  theta.validate(spec);
  innovation.validate();
  cfg.validate();

  RngStream eps_stream(cfg.seed, kInnovationSubstream);
  ExogSampler exog_sampler(exogenous, RngStream(cfg.seed, kExogenousSubstream));
  // sigma0 draws come from the exogenous-side stream so they stay
  // independent of the innovations (a third substream would also do; the
  // exogenous substream is used because its draws precede the recursion).
  RngStream sigma0_stream(cfg.seed, 2);

  const std::size_t total = static_cast<std::size_t>(cfg.horizon) +
                            static_cast<std::size_t>(cfg.burn_in);
  const double inv_delta = 1.0 / spec.delta;

  PathSample path;
  path.seed = cfg.seed;
  path.returns.resize(cfg.horizon);
  path.vol_delta.resize(cfg.horizon);
  path.exog.resize(cfg.horizon);
  path.innovations.resize(cfg.horizon);

  const auto sigma_of = [inv_delta](double sd) {
    if (inv_delta == 0.5) return std::sqrt(sd);  // delta == 2 fast path
    if (inv_delta == 1.0) return sd;
    return std::pow(sd, inv_delta);
  };

  double sigma_delta = initial_sigma_delta(cfg.sigma0, theta, sigma0_stream);
  double ret_prev = cfg.r0;
  const std::size_t skip = static_cast<std::size_t>(cfg.burn_in);
  for (std::size_t t = 0; t < total; ++t) {
    const double x = exog_sampler.next();
    sigma_delta = vol_step_obs(spec, theta, sigma_delta, ret_prev, x);
    if (!(sigma_delta < kVolDivergenceLimit) || !std::isfinite(sigma_delta))
      throw PathDivergedError(t + 1, sigma_delta);
    const double eps = innovation.draw(eps_stream);
    const double ret = sigma_of(sigma_delta) * eps;
    if (t >= skip) {
      const std::size_t i = t - skip;
      path.returns[i] = ret;
      path.vol_delta[i] = sigma_delta;
      path.exog[i] = x;
      path.innovations[i] = eps;
    }
    ret_prev = ret;
  }
  return path;
}

std::vector<PathSample> simulate_batch(const ModelSpec& spec, const Theta& theta,
                                       const InnovationDist& innovation,
                                       const ExogProcess& exogenous, const SimConfig& cfg,
                                       std::size_t n_paths, unsigned n_threads) {
  if (n_paths == 0) throw std::invalid_argument("simulate_batch: n_paths must be positive");
  std::vector<PathSample> paths(n_paths);
  parallel_for(n_paths, n_threads, [&](std::size_t i) {
    SimConfig path_cfg = cfg;
    path_cfg.seed.stream_id = cfg.seed.stream_id + i;
    paths[i] = simulate_path(spec, theta, innovation, exogenous, path_cfg);
  });
  return paths;
}

}  // namespace garchx
