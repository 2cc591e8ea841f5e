#include "core/var.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "core/parallel.hpp"
#include "core/simulate.hpp"
#include "core/stats.hpp"

namespace garchx {

void VarRequest::validate() const {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("VarRequest: level must be in (0,1)");
  if (horizon < 1) throw std::invalid_argument("VarRequest: horizon must be >= 1");
  if (n < 1000) throw std::invalid_argument("VarRequest: n must be >= 1000");
  if (burn_in < 0) throw std::invalid_argument("VarRequest: burn_in must be non-negative");
}

std::uint64_t draws_independent(long horizon, std::size_t n) {
  return 2ull * static_cast<std::uint64_t>(horizon) * n;
}

std::uint64_t draws_ergodic(long burn_in, long horizon, std::size_t n) {
  return 2ull * (static_cast<std::uint64_t>(burn_in) + static_cast<std::uint64_t>(horizon) - 1 +
                 n);
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// h-period log return of one fresh path: simulate burn_in + horizon steps
// from the start state, sum the last horizon returns.
double path_window_sum(const ModelSpec& spec, const Theta& theta,
                       const InnovationDist& innovation, const ExogProcess& exogenous,
                       const VarRequest& request, SeedSpec seed) {
  RngStream eps_stream(seed, kInnovationSubstream);
  ExogSampler exog_sampler(exogenous, RngStream(seed, kExogenousSubstream));
  const double inv_delta = 1.0 / spec.delta;
  double sigma_delta = request.sigma0_delta < 0.0 ? theta[0] : request.sigma0_delta;
  double ret_prev = request.r0;
  double sum = 0.0;
  const long total = request.burn_in + request.horizon;
  for (long t = 0; t < total; ++t) {
    const double x = exog_sampler.next();
    sigma_delta = vol_step_obs(spec, theta, sigma_delta, ret_prev, x);
    if (!(sigma_delta < kVolDivergenceLimit) || !std::isfinite(sigma_delta))
      throw PathDivergedError(static_cast<std::size_t>(t) + 1, sigma_delta);
    const double sigma = inv_delta == 0.5 ? std::sqrt(sigma_delta)
                         : inv_delta == 1.0 ? sigma_delta
                                            : std::pow(sigma_delta, inv_delta);
    const double ret = sigma * innovation.draw(eps_stream);
    if (t >= request.burn_in) sum += ret;
    ret_prev = ret;
  }
  return sum;
}

VarResult finish(std::vector<double> window_sums, const VarRequest& request,
                 std::uint64_t draws, double portfolio_value, const Timer& timer) {
  VarResult result;
  result.method = request.method;
  result.var_logreturn = nearest_rank_lower_quantile(std::move(window_sums), request.level);
  result.var_return = std::exp(result.var_logreturn) - 1.0;
  result.var_value = portfolio_value * result.var_return;
  result.portfolio_value = portfolio_value;
  result.draws_used = draws;
  result.runtime_seconds = timer.elapsed();
  return result;
}

}  // namespace

VarResult var_independent(const ModelSpec& spec, const Theta& theta,
                          const InnovationDist& innovation, const ExogProcess& exogenous,
                          const VarRequest& request, double portfolio_value) {
  Timer timer;
  spec.validate();
  theta.validate(spec);
  innovation.validate();
  request.validate();

  std::vector<double> sums(request.n);
  parallel_for(request.n, request.n_threads, [&](std::size_t i) {
    SeedSpec path_seed = request.seed;
    path_seed.stream_id = request.seed.stream_id + i;
    sums[i] = path_window_sum(spec, theta, innovation, exogenous, request, path_seed);
  });
  return finish(std::move(sums), request, draws_independent(request.horizon, request.n),
                portfolio_value, timer);
}

VarResult var_ergodic(const ModelSpec& spec, const Theta& theta,
                      const InnovationDist& innovation, const ExogProcess& exogenous,
                      const VarRequest& request, double portfolio_value) {
  Timer timer;
  spec.validate();
  theta.validate(spec);
  innovation.validate();
  request.validate();

  const long h = request.horizon;
  SimConfig cfg;
  cfg.horizon = static_cast<long>(request.n) + h - 1;
  cfg.burn_in = request.burn_in;
  cfg.r0 = request.r0;
  cfg.seed = request.seed;
  if (request.sigma0_delta >= 0.0) {
    cfg.sigma0.kind = Sigma0Kind::PointMass;
    cfg.sigma0.value = request.sigma0_delta;
  }
  const PathSample path = simulate_path(spec, theta, innovation, exogenous, cfg);

  std::vector<double> sums(request.n);
  for (std::size_t i = 0; i < request.n; ++i) {
    double s = 0.0;
    for (long j = 0; j < h; ++j) s += path.returns[i + static_cast<std::size_t>(j)];
    sums[i] = s;
  }
  return finish(std::move(sums), request,
                draws_ergodic(request.burn_in, request.horizon, request.n), portfolio_value,
                timer);
}

VarResult compute_var(const ModelSpec& spec, const Theta& theta,
                      const InnovationDist& innovation, const ExogProcess& exogenous,
                      const VarRequest& request, double portfolio_value) {
  return request.method == VarMethod::IndependentPaths
             ? var_independent(spec, theta, innovation, exogenous, request, portfolio_value)
             : var_ergodic(spec, theta, innovation, exogenous, request, portfolio_value);
}

MethodComparison compare_methods(const ModelSpec& spec, const Theta& theta,
                                 const InnovationDist& innovation, const ExogProcess& exogenous,
                                 const VarRequest& request, std::size_t reps) {
  if (reps < 2) throw std::invalid_argument("compare_methods: reps must be >= 2");
  request.validate();

  MethodComparison comparison;
  comparison.reps = reps;
  comparison.var_samples_m1.resize(reps);
  comparison.var_samples_m2.resize(reps);

  // Each replication owns n+1 stream ids: n for the independent paths plus
  // one for the long path. Parallelism lives at the replication level,
  // inner runs are single-threaded, so results match any worker count.
  const std::uint64_t stride = static_cast<std::uint64_t>(request.n) + 1;
  parallel_for(2 * reps, request.n_threads, [&](std::size_t task) {
    const std::size_t rep = task / 2;
    const bool first_method = task % 2 == 0;
    VarRequest run = request;
    run.n_threads = 1;
    run.seed.stream_id = request.seed.stream_id + rep * stride;
    if (first_method) {
      run.method = VarMethod::IndependentPaths;
      comparison.var_samples_m1[rep] =
          var_independent(spec, theta, innovation, exogenous, run).var_logreturn;
    } else {
      run.method = VarMethod::ErgodicSinglePath;
      run.seed.stream_id += request.n;
      comparison.var_samples_m2[rep] =
          var_ergodic(spec, theta, innovation, exogenous, run).var_logreturn;
    }
  });

  const WelchTestResult test =
      welch_t_test(comparison.var_samples_m1, comparison.var_samples_m2);
  comparison.t_stat = test.t;
  comparison.p_value = test.p_value;
  return comparison;
}

}  // namespace garchx
