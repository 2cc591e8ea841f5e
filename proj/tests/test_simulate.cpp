#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/simulate.hpp"
#include "core/stats.hpp"
#include "test_helpers.hpp"

using namespace garchx;
using test::make_theta;

namespace {

const InnovationDist kGaussian{InnovationKind::StdGaussian};

ExogProcess ar1_cauchy() {
  ExogProcess process;
  process.kind = ExogKind::Ar1;
  process.phi = 0.8;
  process.noise = ExogNoiseKind::Cauchy;
  process.noise_scale = 1.0;
  process.burn_in = 10000;
  return process;
}

}  // namespace

TEST_CASE("constant-volatility degenerate model") {
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta theta = make_theta(spec, {0.04, 0.0, 0.0, 0.0});
  SimConfig cfg;
  cfg.horizon = 500;
  cfg.seed = {1, 0};
  const PathSample path = simulate_path(spec, theta, kGaussian, {}, cfg);
  for (std::size_t i = 0; i < path.returns.size(); ++i) {
    CHECK(path.vol_delta[i] == 0.04);
    CHECK(path.returns[i] == 0.2 * path.innovations[i]);
  }
}

TEST_CASE("replay determinism is bitwise") {
  const ModelSpec spec = ModelSpec::gjr_garch();
  const Theta theta = make_theta(spec, {0.04, 0.02, 0.1, 0.8, 0.06});
  SimConfig cfg;
  cfg.horizon = 2000;
  cfg.seed = {77, 3};
  const PathSample a = simulate_path(spec, theta, kGaussian, ar1_cauchy(), cfg);
  const PathSample b = simulate_path(spec, theta, kGaussian, ar1_cauchy(), cfg);
  CHECK(a.returns == b.returns);
  CHECK(a.vol_delta == b.vol_delta);
  CHECK(a.exog == b.exog);
  CHECK(a.innovations == b.innovations);
}

TEST_CASE("stored arrays satisfy the recursion exactly") {
  const ModelSpec spec = ModelSpec::gjr_garch();
  const Theta theta = make_theta(spec, {0.04, 0.02, 0.1, 0.8, 0.06});
  SimConfig cfg;
  cfg.horizon = 1000;
  cfg.sigma0.value = 0.0004;
  cfg.r0 = 0.0;
  cfg.seed = {5, 0};
  const PathSample path = simulate_path(spec, theta, kGaussian, ar1_cauchy(), cfg);
  double sigma_delta = 0.0004;
  double ret_prev = 0.0;
  for (std::size_t i = 0; i < path.returns.size(); ++i) {
    sigma_delta = vol_step_obs(spec, theta, sigma_delta, ret_prev, path.exog[i]);
    CHECK(path.vol_delta[i] == sigma_delta);  // bit-exact replay
    CHECK(path.returns[i] == std::sqrt(sigma_delta) * path.innovations[i]);
    ret_prev = path.returns[i];
  }
}

TEST_CASE("divergence reports the failing step") {
  const ModelSpec spec = ModelSpec::standard_garch();
  // beta at the box edge with huge alpha: explosive
  Theta theta = make_theta(spec, {1.0, 0.0, 4.9, 0.999});
  SimConfig cfg;
  cfg.horizon = 100000;
  cfg.seed = {3, 0};
  CHECK_THROWS_AS(simulate_path(spec, theta, kGaussian, {}, cfg), PathDivergedError);
}

TEST_CASE("paper 7.1 path has near-zero mean return") {
  const ModelSpec spec = ModelSpec::gjr_garch();
  const Theta theta = make_theta(spec, {0.04, 0.02, 0.1, 0.8, 0.06});
  SimConfig cfg;
  cfg.horizon = 100000;
  cfg.sigma0.value = 0.0004;
  cfg.burn_in = 5000;
  cfg.seed = {2024, 0};
  const PathSample path = simulate_path(spec, theta, kGaussian, ar1_cauchy(), cfg);
  CHECK(std::fabs(mean(path.returns)) < 0.02);
}

TEST_CASE("batch: stream layout and thread invariance") {
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta theta = make_theta(spec, {0.2, 0.1, 0.1, 0.6});
  ExogProcess exog;  // iid gaussian
  SimConfig cfg;
  cfg.horizon = 300;
  cfg.seed = {11, 0};

  const auto batch1 = simulate_batch(spec, theta, kGaussian, exog, cfg, 8, 1);
  const auto batch4 = simulate_batch(spec, theta, kGaussian, exog, cfg, 8, 4);
  REQUIRE(batch1.size() == 8);
  for (std::size_t p = 0; p < 8; ++p) {
    CHECK(batch1[p].returns == batch4[p].returns);
    CHECK(batch1[p].exog == batch4[p].exog);
  }

  // n_paths = 1 equals simulate_path on the base stream
  const PathSample single = simulate_path(spec, theta, kGaussian, exog, cfg);
  CHECK(batch1[0].returns == single.returns);
}

TEST_CASE("terminal-return variance of the degenerate model") {
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta theta = make_theta(spec, {0.04, 0.0, 0.0, 0.0});
  SimConfig cfg;
  cfg.horizon = 3;
  cfg.seed = {21, 0};
  const auto batch = simulate_batch(spec, theta, kGaussian, {}, cfg, 40000, 0);
  std::vector<double> terminal(batch.size());
  for (std::size_t p = 0; p < batch.size(); ++p) terminal[p] = batch[p].returns.back();
  CHECK(variance(terminal) == doctest::Approx(0.04).epsilon(0.05));
}

TEST_CASE("initial condition forgetting at the theoretical rate") {
  // Paired paths sharing shocks, sigma0 in {omega, 100 omega}: the mean gap
  // decays like E[c(eps)]^t = 0.9^t for the standard model with alpha1 = 0.1,
  // beta1 = 0.8.
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta theta = make_theta(spec, {0.04, 0.0, 0.1, 0.8});
  const std::size_t reps = 500;
  const std::size_t horizon = 40;
  std::vector<double> mean_gap(horizon, 0.0);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    RngStream eps_stream({400 + rep, 0}, kInnovationSubstream);
    double sa = 0.04, sb = 4.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      const double eps = eps_stream.normal();
      sa = vol_step(spec, theta, sa, eps, 0.0);
      sb = vol_step(spec, theta, sb, eps, 0.0);
      mean_gap[t] += std::fabs(sa - sb) / static_cast<double>(reps);
    }
  }
  std::vector<double> ts(horizon), logs(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    ts[t] = static_cast<double>(t + 1);
    logs[t] = std::log(mean_gap[t]);
  }
  const OlsFit fit = ols_fit(ts, logs);
  const double rho = std::exp(fit.slope);
  CHECK(rho > 0.85);
  CHECK(rho < 0.95);
  CHECK(fit.r2 > 0.99);
}
