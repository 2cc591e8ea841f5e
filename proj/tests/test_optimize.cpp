#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/optimize.hpp"

using namespace garchx;

TEST_CASE("quadratic with interior minimum") {
  const ObjectiveWithGrad f = [](const std::vector<double>& x, std::vector<double>& g) {
    g = {2.0 * (x[0] - 1.0), 8.0 * (x[1] + 2.0)};
    return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0);
  };
  const auto result = minimize_projected_bfgs(f, {5.0, 5.0}, {-10.0, -10.0}, {10.0, 10.0});
  CHECK(result.converged);
  CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.x[1] == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("quadratic with active bounds") {
  const ObjectiveWithGrad f = [](const std::vector<double>& x, std::vector<double>& g) {
    g = {2.0 * (x[0] - 1.0), 2.0 * (x[1] + 2.0)};
    return (x[0] - 1.0) * (x[0] - 1.0) + (x[1] + 2.0) * (x[1] + 2.0);
  };
  // minimum (1,-2) lies outside the box [0, 0.5] x [0, 3]
  const auto result = minimize_projected_bfgs(f, {0.25, 2.0}, {0.0, 0.0}, {0.5, 3.0});
  CHECK(result.converged);
  CHECK(result.x[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(result.x[1] == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("rosenbrock inside a box") {
  const ObjectiveWithGrad f = [](const std::vector<double>& x, std::vector<double>& g) {
    const double a = x[1] - x[0] * x[0];
    g = {-400.0 * x[0] * a - 2.0 * (1.0 - x[0]), 200.0 * a};
    return 100.0 * a * a + (1.0 - x[0]) * (1.0 - x[0]);
  };
  BoxOptimOptions options;
  options.max_iter = 2000;
  const auto result =
      minimize_projected_bfgs(f, {-1.2, 1.0}, {-2.0, -2.0}, {2.0, 2.0}, options);
  CHECK(result.converged);
  CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(result.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("pinned coordinates stay pinned") {
  const ObjectiveWithGrad f = [](const std::vector<double>& x, std::vector<double>& g) {
    g = {2.0 * x[0], 2.0 * x[1]};
    return x[0] * x[0] + x[1] * x[1];
  };
  const auto result = minimize_projected_bfgs(f, {0.7, 0.7}, {0.7, -1.0}, {0.7, 1.0});
  CHECK(result.x[0] == 0.7);
  CHECK(result.x[1] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("nelder-mead handles a kinked objective in a box") {
  const Objective f = [](const std::vector<double>& x) {
    return std::fabs(x[0] - 0.3) + (x[1] - 0.6) * (x[1] - 0.6) + 1.0;
  };
  BoxOptimOptions options;
  options.max_iter = 3000;
  options.f_tol = 1e-14;
  const auto result = minimize_nelder_mead_box(f, {0.9, 0.1}, {0.0, 0.0}, {1.0, 1.0}, options);
  CHECK(result.f == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(result.x[0] == doctest::Approx(0.3).epsilon(1e-3));
  CHECK(result.x[1] == doctest::Approx(0.6).epsilon(1e-3));
}

TEST_CASE("nelder-mead respects the box") {
  const Objective f = [](const std::vector<double>& x) { return -x[0] - x[1]; };
  const auto result = minimize_nelder_mead_box(f, {0.5, 0.5}, {0.0, 0.0}, {1.0, 2.0});
  CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.x[1] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("non-finite objective regions are avoided") {
  const ObjectiveWithGrad f = [](const std::vector<double>& x, std::vector<double>& g) {
    if (x[0] > 2.0) return std::numeric_limits<double>::quiet_NaN();
    g = {2.0 * (x[0] - 1.5)};
    return (x[0] - 1.5) * (x[0] - 1.5);
  };
  const auto result = minimize_projected_bfgs(f, {0.0}, {-5.0}, {5.0});
  CHECK(result.x[0] == doctest::Approx(1.5).epsilon(1e-6));
}
