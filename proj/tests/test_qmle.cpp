#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/likelihood.hpp"
#include "core/qmle.hpp"
#include "core/simulate.hpp"
#include "core/stats.hpp"
#include "test_helpers.hpp"

using namespace garchx;
using test::make_theta;

namespace {

const InnovationDist kGaussian{InnovationKind::StdGaussian};

std::pair<std::vector<double>, std::vector<double>> simulate_data(const ModelSpec& spec,
                                                                  const Theta& theta,
                                                                  long n, SeedSpec seed) {
  ExogProcess exog;
  SimConfig cfg;
  cfg.horizon = n;
  cfg.burn_in = 2000;
  cfg.seed = seed;
  const PathSample path = simulate_path(spec, theta, kGaussian, exog, cfg);
  return {path.returns, path.exog};
}

}  // namespace

TEST_CASE("constant-volatility model recovers the closed-form MLE") {
  const ModelSpec spec = ModelSpec::standard_garch();
  Theta init = make_theta(spec, {0.3, 0.0, 0.0, 0.0});
  init.upper[1] = init.upper[2] = init.upper[3] = 0.0;

  RngStream stream({91, 0});
  std::vector<double> returns(4000), exog(4000, 0.0);
  for (auto& r : returns) r = 0.5 * stream.normal();
  double m2 = 0.0;
  for (double r : returns) m2 += r * r;
  m2 /= static_cast<double>(returns.size());

  const FitResult result = fit(spec, init, returns, exog);
  CHECK(result.converged);
  CHECK(result.theta_hat[0] == doctest::Approx(m2).epsilon(1e-6));
  CHECK(result.grad_norm < 1e-7);
}

TEST_CASE("zero returns drive the volatility parameters to the lower corner") {
  const ModelSpec spec = ModelSpec::standard_garch();
  Theta init = make_theta(spec, {0.3, 0.1, 0.05, 0.5});
  init.lower[0] = 0.01;
  const std::vector<double> returns(500, 0.0);
  std::vector<double> exog(500);
  RngStream stream({92, 0});
  for (auto& x : exog) x = stream.normal();

  const FitResult result = fit(spec, init, returns, exog);
  CHECK(result.theta_hat[0] == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(result.theta_hat[1] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(result.theta_hat[3] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(result.at_boundary);
}

TEST_CASE("gjr-x fit recovers the generating parameters") {
  const ModelSpec spec = ModelSpec::gjr_garch();
  const Theta truth = make_theta(spec, {0.1, 0.2, 0.08, 0.5, 0.1});
  const auto [returns, exog] = simulate_data(spec, truth, 20000, {93, 0});
  const Theta init = default_theta(spec, returns, truth.lower, truth.upper);
  const FitResult result = fit(spec, init, returns, exog);
  CHECK(result.converged);
  CHECK_FALSE(result.at_boundary);
  CHECK(result.b_valid);
  for (std::size_t k = 0; k < truth.values.size(); ++k) {
    const double se =
        std::sqrt(result.b_matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) /
                  static_cast<double>(result.n_obs));
    CHECK(std::fabs(result.theta_hat[k] - truth[k]) < 5.0 * se + 0.02);
  }
  // score at an interior converged optimum is numerically zero
  const std::vector<double> grad = score(spec, result.theta_hat, returns, exog);
  for (double g : grad) CHECK(std::fabs(g) < 1e-6);
}

TEST_CASE("multi-start returns a unique optimum on simulated data") {
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta truth = make_theta(spec, {0.2, 0.3, 0.1, 0.4});
  const auto [returns, exog] = simulate_data(spec, truth, 4000, {94, 0});
  Theta box = truth;
  box.upper = {2.0, 2.0, 0.6, 0.95};
  box.lower = {1e-4, 0.0, 0.0, 0.0};
  const Theta init = default_theta(spec, returns, box.lower, box.upper);

  FitOptions options;
  options.multi_start = 5;
  options.seed = {123, 0};
  const FitResult multi = fit(spec, init, returns, exog, options);
  const FitResult single = fit(spec, init, returns, exog);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(multi.theta_hat[k] == doctest::Approx(single.theta_hat[k]).epsilon(1e-4));
}

TEST_CASE("fgarch fits by nelder-mead") {
  const ModelSpec spec = ModelSpec::fgarch(2.0, 2.0);
  const Theta truth = make_theta(spec, {0.15, 0.1, 0.1, 0.5, 0.2, 0.1});
  const auto [returns, exog] = simulate_data(spec, truth, 8000, {95, 0});
  Theta init = truth;
  init.values = {0.3, 0.05, 0.05, 0.4, 0.0, 0.0};
  const FitResult result = fit(spec, init, returns, exog);
  CHECK(result.b_valid);  // finite-difference A_n path
  CHECK(std::fabs(result.theta_hat[0] - truth[0]) < 0.15);
  CHECK(std::fabs(result.theta_hat[3] - truth[3]) < 0.2);
  // the fitted likelihood is at least as good as the truth's
  CHECK(result.loglik >= -neg_loglik(spec, truth, returns, exog) - 1e-6);
}

TEST_CASE("confidence region basics") {
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta truth = make_theta(spec, {0.2, 0.3, 0.1, 0.4});
  const auto [returns, exog] = simulate_data(spec, truth, 10000, {96, 0});
  const Theta init = default_theta(spec, returns, truth.lower, truth.upper);
  const FitResult result = fit(spec, init, returns, exog);
  REQUIRE(result.b_valid);

  SUBCASE("center is always a member") {
    const ConfidenceRegion region = confidence_region(result, {0, 1, 2, 3}, 0.05);
    const std::vector<double> center = result.theta_hat.values;
    CHECK(region.contains(center));
    CHECK(region.quadratic_form(center) == 0.0);
  }

  SUBCASE("scalar region equals the classical normal interval") {
    const ConfidenceRegion region = confidence_region(result, {1}, 0.05);
    const auto [lo, hi] = region.interval(0);
    const double half = 0.5 * (hi - lo);
    const double se = std::sqrt(result.b_matrix(1, 1) / static_cast<double>(result.n_obs));
    CHECK(half == doctest::Approx(1.959963984540054 * se).epsilon(1e-9));
    // chi2_1(0.95) equals the squared two-sided normal quantile
    CHECK(region.chi2_quantile == doctest::Approx(3.841458820694124).epsilon(1e-12));
  }

  SUBCASE("membership flips outside the ellipsoid") {
    const ConfidenceRegion region = confidence_region(result, {0, 2}, 0.05);
    std::vector<double> far{result.theta_hat[0] * 3.0 + 1.0, result.theta_hat[2] + 1.0};
    CHECK_FALSE(region.contains(far));
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(confidence_region(result, {}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(confidence_region(result, {9}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(confidence_region(result, {0}, 1.5), std::invalid_argument);
  }
}

TEST_CASE("matrix identities at moderate scale") {
  // Smoke-scale version of the asymptotic identities; the acceptance suite
  // runs them at n = 10^5 with the 10% Frobenius gate.
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta truth = make_theta(spec, {0.2, 0.3, 0.08, 0.3});
  const auto [returns, exog] = simulate_data(spec, truth, 30000, {97, 0});
  const Theta init = default_theta(spec, returns, truth.lower, truth.upper);
  const FitResult result = fit(spec, init, returns, exog);
  REQUIRE(result.converged);

  LikelihoodRequest request;
  request.want_score = false;
  request.want_hessian = true;
  request.want_a_matrix = true;
  request.want_kappa = true;
  const LikelihoodEval eval =
      evaluate_likelihood(spec, result.theta_hat, returns, exog, request);

  const double d2 = spec.delta * spec.delta;
  const Eigen::MatrixXd h_target = -4.0 / d2 * eval.a_matrix;
  CHECK((eval.hessian - h_target).norm() / h_target.norm() < 0.15);
}
