#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "core/io.hpp"
#include "core/simulate.hpp"
#include "test_helpers.hpp"

using namespace garchx;
using test::make_theta;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("garchx_test_" + name);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path);
  file << text;
}

const char* kGjrModelJson = R"({
  "family": "gjr_garch",
  "u_transform": "abs",
  "theta": {"values": [0.04, 0.02, 0.1, 0.8, 0.06],
            "lower": [1e-4, 0.0, 0.0, 0.0, 0.0],
            "upper": [10.0, 5.0, 1.0, 0.999, 1.0]},
  "innovation": {"kind": "gaussian"},
  "exogenous": {"kind": "ar1", "phi": 0.8, "noise": "cauchy", "burn_in": 10000}
})";

}  // namespace

TEST_CASE("model config round trip") {
  const ModelConfig config = model_config_from_json(kGjrModelJson);
  CHECK(config.spec.family == Family::GjrGarch);
  CHECK(config.spec.delta == 2.0);
  CHECK(config.theta[4] == 0.06);
  CHECK(config.exogenous.kind == ExogKind::Ar1);
  CHECK(config.exogenous.noise == ExogNoiseKind::Cauchy);
  CHECK(config.exogenous.burn_in == 10000);

  const ModelConfig reparsed = model_config_from_json(model_config_to_json(config));
  CHECK(reparsed.spec.family == config.spec.family);
  CHECK(reparsed.theta.values == config.theta.values);
  CHECK(reparsed.theta.lower == config.theta.lower);
  CHECK(reparsed.exogenous.phi == config.exogenous.phi);
}

TEST_CASE("unknown keys are rejected with the key name") {
  const std::string bad = R"({"family": "standard_garch", "u_transform": "abs",
    "theta": {"values": [0.1,0,0.1,0.8], "lower": [1e-4,0,0,0], "upper": [1,1,1,0.99]},
    "frobnicate": 1})";
  CHECK_THROWS_WITH_AS(model_config_from_json(bad), doctest::Contains("frobnicate"),
                       std::invalid_argument);
  CHECK_THROWS_AS(model_config_from_json("{"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(model_config_from_json(R"({"family": "garchzilla",
    "u_transform": "abs", "theta": {"values": [], "lower": [], "upper": []}})"),
                       doctest::Contains("garchzilla"), std::invalid_argument);
}

TEST_CASE("series csv round trip is bit exact") {
  const ModelSpec spec = ModelSpec::gjr_garch();
  const Theta theta = make_theta(spec, {0.04, 0.02, 0.1, 0.8, 0.06});
  ExogProcess exog;
  exog.kind = ExogKind::Ar1;
  exog.phi = 0.8;
  exog.noise = ExogNoiseKind::Cauchy;
  exog.burn_in = 200;
  SimConfig cfg;
  cfg.horizon = 500;
  cfg.seed = {55, 0};
  const PathSample path =
      simulate_path(spec, theta, {InnovationKind::StdGaussian}, exog, cfg);

  const auto file = temp_file("roundtrip.csv");
  write_series_csv(file.string(), path);
  const auto [returns, x] = load_series_csv(file.string());
  CHECK(returns == path.returns);
  CHECK(x == path.exog);
  std::filesystem::remove(file);
}

TEST_CASE("series csv validation errors") {
  SUBCASE("empty file") {
    const auto file = temp_file("empty.csv");
    write_text(file, "");
    CHECK_THROWS_WITH_AS(load_series_csv(file.string()), doctest::Contains("no data rows"),
                         std::invalid_argument);
    std::filesystem::remove(file);
  }
  SUBCASE("header only") {
    const auto file = temp_file("header_only.csv");
    write_text(file, "t,R,x\n");
    CHECK_THROWS_WITH_AS(load_series_csv(file.string()), doctest::Contains("no data rows"),
                         std::invalid_argument);
    std::filesystem::remove(file);
  }
  SUBCASE("bad header") {
    const auto file = temp_file("bad_header.csv");
    write_text(file, "time,ret,cov\n1,0.1,0.2\n");
    CHECK_THROWS_AS(load_series_csv(file.string()), std::invalid_argument);
    std::filesystem::remove(file);
  }
  SUBCASE("ragged row reports its number") {
    const auto file = temp_file("ragged.csv");
    write_text(file, "t,R,x\n1,0.1,0.2\n2,0.3\n");
    CHECK_THROWS_WITH_AS(load_series_csv(file.string()), doctest::Contains("row 2"),
                         std::invalid_argument);
    std::filesystem::remove(file);
  }
  SUBCASE("non-finite value rejected") {
    const auto file = temp_file("nan.csv");
    write_text(file, "t,R,x\n1,0.1,0.2\n2,nan,0.4\n");
    CHECK_THROWS_WITH_AS(load_series_csv(file.string()), doctest::Contains("row 2"),
                         std::invalid_argument);
    std::filesystem::remove(file);
  }
  SUBCASE("non-increasing t rejected") {
    const auto file = temp_file("t_order.csv");
    write_text(file, "t,R,x\n1,0.1,0.2\n1,0.3,0.4\n");
    CHECK_THROWS_WITH_AS(load_series_csv(file.string()),
                         doctest::Contains("strictly increasing"), std::invalid_argument);
    std::filesystem::remove(file);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_series_csv("/nonexistent/definitely_missing.csv"),
                    std::runtime_error);
  }
}

TEST_CASE("binary path cache round trip") {
  const ModelSpec spec = ModelSpec::standard_garch();
  const Theta theta = make_theta(spec, {0.2, 0.1, 0.1, 0.6});
  SimConfig cfg;
  cfg.horizon = 300;
  cfg.seed = {56, 7};
  const PathSample path = simulate_path(spec, theta, {InnovationKind::StdGaussian}, {}, cfg);

  const auto file = temp_file("cache.bin");
  write_path_binary(file.string(), path);
  const PathSample loaded = load_path_binary(file.string());
  CHECK(loaded.returns == path.returns);
  CHECK(loaded.vol_delta == path.vol_delta);
  CHECK(loaded.exog == path.exog);
  CHECK(loaded.innovations == path.innovations);
  CHECK(loaded.seed.master_seed == path.seed.master_seed);
  CHECK(loaded.seed.stream_id == path.seed.stream_id);
  std::filesystem::remove(file);

  const auto garbage = temp_file("garbage.bin");
  write_text(garbage, "definitely not a cache");
  CHECK_THROWS_AS(load_path_binary(garbage.string()), std::invalid_argument);
  std::filesystem::remove(garbage);
}

TEST_CASE("fit result json round trip is field exact") {
  const ModelConfig config = model_config_from_json(kGjrModelJson);
  SimConfig sim;
  sim.horizon = 1500;
  sim.burn_in = 500;
  sim.seed = {57, 0};
  const PathSample path =
      simulate_path(config.spec, config.theta, config.innovation, config.exogenous, sim);
  const FitResult fitted =
      fit(config.spec, config.theta, path.returns, path.exog);

  const std::string text = fit_result_to_json(fitted);
  const FitResult loaded = fit_result_from_json(text);
  CHECK(loaded.theta_hat.values == fitted.theta_hat.values);
  CHECK(loaded.theta_hat.lower == fitted.theta_hat.lower);
  CHECK(loaded.loglik == fitted.loglik);
  CHECK(loaded.kappa_hat == fitted.kappa_hat);
  CHECK(loaded.n_obs == fitted.n_obs);
  CHECK(loaded.converged == fitted.converged);
  CHECK(loaded.at_boundary == fitted.at_boundary);
  CHECK(loaded.b_valid == fitted.b_valid);
  CHECK(loaded.a_matrix == fitted.a_matrix);
  if (fitted.b_valid) CHECK(loaded.b_matrix == fitted.b_matrix);

  // round trip again: serialization is stable
  CHECK(fit_result_to_json(loaded) == text);
}

TEST_CASE("var and check config parsing") {
  const VarRunConfig var_cfg = var_config_from_json(
      R"({"method": "compare", "level": 0.99, "horizon": 10, "n": 20000,
          "burn_in": 5000, "reps": 100, "seed": {"master_seed": 9}})");
  CHECK(var_cfg.mode == "compare");
  CHECK(var_cfg.request.n == 20000);
  CHECK(var_cfg.request.burn_in == 5000);
  CHECK(var_cfg.reps == 100);
  CHECK_THROWS_AS(var_config_from_json(R"({"method": "nope"})"), std::invalid_argument);

  const CheckConfig check_cfg =
      check_config_from_json(R"({"mode": "moment", "m": 2, "n_mc": 50000})");
  CHECK(check_cfg.moment_mode);
  CHECK(check_cfg.m == 2);
  CHECK(check_cfg.n_mc == 50000);
  CHECK_THROWS_AS(check_config_from_json(R"({"alpha": 0.5, "bogus": 1})"),
                  std::invalid_argument);
}
