#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/model.hpp"
#include "core/qmle.hpp"
#include "core/simulate.hpp"
#include "core/stochastic.hpp"
#include "core/var.hpp"

namespace garchx {

/// File-system level failure (open/short read/write), as opposed to a
/// malformed but readable document.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to instantiate a model for simulation, checking,
/// fitting or VaR: the family spec, the parameter point with its box, and
/// the driving processes.
struct ModelConfig {
  ModelSpec spec;
  Theta theta;
  InnovationDist innovation;
  ExogProcess exogenous;
};

/// JSON (de)serialization. Parsers validate structurally: required keys,
/// types, and rejection of unknown keys (mirroring the schemas shipped
/// under schemas/). Messages carry the offending key path.
ModelConfig model_config_from_json(const std::string& json_text);
std::string model_config_to_json(const ModelConfig& config);

SimConfig sim_config_from_json(const std::string& json_text);

struct CheckConfig {
  bool moment_mode = false;  ///< false: stationarity at alpha; true: moment of order m
  double alpha = 1.0;
  unsigned m = 1;
  std::size_t n_mc = 1000000;
  SeedSpec seed;
};
CheckConfig check_config_from_json(const std::string& json_text);

struct VarRunConfig {
  VarRequest request;
  std::string mode = "indep";  ///< indep | ergodic | compare
  std::size_t reps = 500;
  double portfolio_value = 1.0;
};
VarRunConfig var_config_from_json(const std::string& json_text);

std::string fit_result_to_json(const FitResult& result);
FitResult fit_result_from_json(const std::string& json_text);

std::string condition_report_to_json(const ConditionReport& report);
std::string var_result_to_json(const VarResult& result);
std::string method_comparison_to_json(const MethodComparison& comparison);

/// Series file: CSV with header t,R,x and optional sigma_delta,eps columns.
/// Reals are written with 17 significant digits so a write/read round trip
/// is bit exact.
void write_series_csv(const std::string& path, const PathSample& sample);
std::pair<std::vector<double>, std::vector<double>> load_series_csv(const std::string& path);

/// Compact versioned binary path cache.
void write_path_binary(const std::string& path, const PathSample& sample);
PathSample load_path_binary(const std::string& path);

}  // namespace garchx
