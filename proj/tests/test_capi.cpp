#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "garchx/garchx.h"

namespace {

const char* kModelJson = R"({
  "family": "standard_garch",
  "u_transform": "abs",
  "theta": {"values": [0.2, 0.1, 0.1, 0.6],
            "lower": [1e-4, 0.0, 0.0, 0.0],
            "upper": [5.0, 5.0, 1.0, 0.99]},
  "innovation": {"kind": "gaussian"},
  "exogenous": {"kind": "iid_gaussian"}
})";

struct Model {
  garchx_model* ptr = nullptr;
  ~Model() { garchx_model_free(ptr); }
};

}  // namespace

TEST_CASE("version and error surface") {
  CHECK(std::string(garchx_version()) == "0.1.0");
  garchx_model* model = nullptr;
  CHECK(garchx_model_from_json("{ not json", &model) == GARCHX_ERR_INVALID);
  CHECK(std::string(garchx_last_error()).size() > 0);
  CHECK(garchx_model_from_json(nullptr, &model) == GARCHX_ERR_INVALID);
}

TEST_CASE("model json round trip through handles") {
  Model model;
  REQUIRE(garchx_model_from_json(kModelJson, &model.ptr) == GARCHX_OK);
  char* text = nullptr;
  REQUIRE(garchx_model_to_json(model.ptr, &text) == GARCHX_OK);
  Model reparsed;
  CHECK(garchx_model_from_json(text, &reparsed.ptr) == GARCHX_OK);
  garchx_string_free(text);
}

TEST_CASE("simulate, write, reload and fit through the C surface") {
  Model model;
  REQUIRE(garchx_model_from_json(kModelJson, &model.ptr) == GARCHX_OK);

  garchx_path* path = nullptr;
  REQUIRE(garchx_simulate(model.ptr,
                          R"({"horizon": 3000, "burn_in": 500,
                              "seed": {"master_seed": 12, "stream_id": 0}})",
                          &path) == GARCHX_OK);
  CHECK(garchx_path_length(path) == 3000);
  CHECK(garchx_path_returns(path) != nullptr);

  const auto csv = std::filesystem::temp_directory_path() / "garchx_capi_series.csv";
  REQUIRE(garchx_path_write_csv(path, csv.string().c_str()) == GARCHX_OK);

  garchx_series* series = nullptr;
  REQUIRE(garchx_series_load_csv(csv.string().c_str(), &series) == GARCHX_OK);
  REQUIRE(garchx_series_length(series) == 3000);
  CHECK(std::memcmp(garchx_series_returns(series), garchx_path_returns(path),
                    3000 * sizeof(double)) == 0);

  double negll = 0.0;
  CHECK(garchx_neg_loglik(model.ptr, garchx_series_returns(series),
                          garchx_series_exog(series), 3000, &negll) == GARCHX_OK);
  CHECK(negll == negll);  // finite

  double grad[4];
  CHECK(garchx_score(model.ptr, garchx_series_returns(series), garchx_series_exog(series),
                     3000, grad) == GARCHX_OK);

  garchx_fit_result* result = nullptr;
  REQUIRE(garchx_fit(model.ptr, garchx_series_returns(series), garchx_series_exog(series),
                     3000, nullptr, &result) == GARCHX_OK);
  char* fit_json = nullptr;
  REQUIRE(garchx_fit_result_to_json(result, &fit_json) == GARCHX_OK);

  garchx_fit_result* reloaded = nullptr;
  REQUIRE(garchx_fit_result_load_json(fit_json, &reloaded) == GARCHX_OK);
  char* region_json = nullptr;
  CHECK(garchx_confidence_region_json(reloaded, "omega,lambda", 0.95, &region_json) ==
        GARCHX_OK);
  CHECK(std::string(region_json).find("chi2_quantile") != std::string::npos);

  CHECK(garchx_confidence_region_json(reloaded, "omega,unicorn", 0.95, &region_json) ==
        GARCHX_ERR_INVALID);
  CHECK(std::string(garchx_last_error()).find("unicorn") != std::string::npos);

  garchx_string_free(region_json);
  garchx_string_free(fit_json);
  garchx_fit_result_free(result);
  garchx_fit_result_free(reloaded);
  garchx_series_free(series);
  garchx_path_free(path);
  std::filesystem::remove(csv);
}

TEST_CASE("check and var through the C surface") {
  Model model;
  REQUIRE(garchx_model_from_json(kModelJson, &model.ptr) == GARCHX_OK);

  char* report = nullptr;
  REQUIRE(garchx_check_json(model.ptr,
                            R"({"mode": "stationarity", "alpha": 1.0, "n_mc": 20000})",
                            &report) == GARCHX_OK);
  CHECK(std::string(report).find("satisfied") != std::string::npos);
  garchx_string_free(report);

  char* var_out = nullptr;
  REQUIRE(garchx_var_json(model.ptr,
                          R"({"method": "indep", "level": 0.99, "horizon": 5,
                              "n": 2000, "burn_in": 100,
                              "seed": {"master_seed": 3, "stream_id": 0}})",
                          &var_out) == GARCHX_OK);
  CHECK(std::string(var_out).find("draws_used") != std::string::npos);
  garchx_string_free(var_out);

  CHECK(garchx_var_json(model.ptr, R"({"level": 2.0})", &var_out) == GARCHX_ERR_INVALID);
}

TEST_CASE("numeric failures map to the numeric status") {
  const char* explosive = R"({
    "family": "standard_garch",
    "u_transform": "abs",
    "theta": {"values": [1.0, 0.0, 4.9, 0.999],
              "lower": [1e-4, 0.0, 0.0, 0.0],
              "upper": [5.0, 5.0, 5.0, 0.9999]},
    "innovation": {"kind": "gaussian"},
    "exogenous": {"kind": "iid_gaussian"}
  })";
  Model model;
  REQUIRE(garchx_model_from_json(explosive, &model.ptr) == GARCHX_OK);
  garchx_path* path = nullptr;
  CHECK(garchx_simulate(model.ptr,
                        R"({"horizon": 200000, "seed": {"master_seed": 1, "stream_id": 0}})",
                        &path) == GARCHX_ERR_NUMERIC);
  CHECK(std::string(garchx_last_error()).find("diverged") != std::string::npos);
}
