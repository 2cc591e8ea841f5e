#include "garchx/garchx.h"

#include <cstring>
#include <json.hpp>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "core/io.hpp"
#include "core/likelihood.hpp"
#include "core/qmle.hpp"
#include "core/simulate.hpp"
#include "core/var.hpp"

using namespace garchx;

struct garchx_model {
  ModelConfig config;
};

struct garchx_series {
  std::vector<double> returns;
  std::vector<double> exog;
};

struct garchx_path {
  PathSample sample;
};

struct garchx_fit_result {
  FitResult result;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

// Runs body, translating exceptions into status codes. Numeric failures are
// the runtime_error family (divergence, singularities), validation failures
// are invalid_argument.
template <typename F>
garchx_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return GARCHX_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return GARCHX_ERR_INVALID;
  } catch (const PathDivergedError& e) {
    set_error(e.what());
    return GARCHX_ERR_NUMERIC;
  } catch (const IoError& e) {
    set_error(e.what());
    return GARCHX_ERR_IO;
  } catch (const std::ios_base::failure& e) {
    set_error(e.what());
    return GARCHX_ERR_IO;
  } catch (const std::runtime_error& e) {
    set_error(e.what());
    return GARCHX_ERR_NUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return GARCHX_ERR_INVALID;
  }
}

garchx_status require(bool ok, const char* message) {
  if (ok) return GARCHX_OK;
  set_error(message);
  return GARCHX_ERR_INVALID;
}

}  // namespace

extern "C" {

const char* garchx_version(void) { return "0.1.0"; }

const char* garchx_last_error(void) { return g_last_error.c_str(); }

void garchx_string_free(char* text) { delete[] text; }

garchx_status garchx_model_from_json(const char* json_text, garchx_model** out) {
  if (require(json_text && out, "garchx_model_from_json: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    auto model = std::make_unique<garchx_model>();
    model->config = model_config_from_json(json_text);
    *out = model.release();
  });
}

garchx_status garchx_model_to_json(const garchx_model* model, char** out_json) {
  if (require(model && out_json, "garchx_model_to_json: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] { *out_json = dup_string(model_config_to_json(model->config)); });
}

void garchx_model_free(garchx_model* model) { delete model; }

garchx_status garchx_simulate(const garchx_model* model, const char* sim_config_json,
                              garchx_path** out) {
  if (require(model && sim_config_json && out, "garchx_simulate: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    const SimConfig cfg = sim_config_from_json(sim_config_json);
    auto path = std::make_unique<garchx_path>();
    path->sample = simulate_path(model->config.spec, model->config.theta,
                                 model->config.innovation, model->config.exogenous, cfg);
    *out = path.release();
  });
}

size_t garchx_path_length(const garchx_path* path) {
  return path ? path->sample.returns.size() : 0;
}

const double* garchx_path_returns(const garchx_path* path) {
  return path ? path->sample.returns.data() : nullptr;
}

const double* garchx_path_vol_delta(const garchx_path* path) {
  return path ? path->sample.vol_delta.data() : nullptr;
}

const double* garchx_path_exog(const garchx_path* path) {
  return path ? path->sample.exog.data() : nullptr;
}

const double* garchx_path_innovations(const garchx_path* path) {
  return path ? path->sample.innovations.data() : nullptr;
}

garchx_status garchx_path_write_csv(const garchx_path* path, const char* file_path) {
  if (require(path && file_path, "garchx_path_write_csv: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] { write_series_csv(file_path, path->sample); });
}

garchx_status garchx_path_write_binary(const garchx_path* path, const char* file_path) {
  if (require(path && file_path, "garchx_path_write_binary: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] { write_path_binary(file_path, path->sample); });
}

void garchx_path_free(garchx_path* path) { delete path; }

garchx_status garchx_series_load_csv(const char* file_path, garchx_series** out) {
  if (require(file_path && out, "garchx_series_load_csv: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    auto series = std::make_unique<garchx_series>();
    auto [returns, exog] = load_series_csv(file_path);
    series->returns = std::move(returns);
    series->exog = std::move(exog);
    *out = series.release();
  });
}

size_t garchx_series_length(const garchx_series* series) {
  return series ? series->returns.size() : 0;
}

const double* garchx_series_returns(const garchx_series* series) {
  return series ? series->returns.data() : nullptr;
}

const double* garchx_series_exog(const garchx_series* series) {
  return series ? series->exog.data() : nullptr;
}

void garchx_series_free(garchx_series* series) { delete series; }

garchx_status garchx_neg_loglik(const garchx_model* model, const double* returns,
                                const double* exog, size_t n, double* out) {
  if (require(model && returns && exog && out, "garchx_neg_loglik: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    *out = neg_loglik(model->config.spec, model->config.theta, {returns, n}, {exog, n});
  });
}

garchx_status garchx_score(const garchx_model* model, const double* returns, const double* exog,
                           size_t n, double* out) {
  if (require(model && returns && exog && out, "garchx_score: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    const std::vector<double> grad =
        score(model->config.spec, model->config.theta, {returns, n}, {exog, n});
    std::memcpy(out, grad.data(), grad.size() * sizeof(double));
  });
}

garchx_status garchx_fit(const garchx_model* model, const double* returns, const double* exog,
                         size_t n, const char* options_json, garchx_fit_result** out) {
  if (require(model && returns && exog && out, "garchx_fit: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    FitOptions options;
    if (options_json) {
      const auto root = nlohmann::json::parse(options_json);
      for (const auto& item : root.items()) {
        if (item.key() == "max_iter") options.max_iter = item.value().get<int>();
        else if (item.key() == "grad_tol") options.grad_tol = item.value().get<double>();
        else if (item.key() == "multi_start") options.multi_start = item.value().get<int>();
        else if (item.key() == "seed") {
          options.seed.master_seed = item.value().value("master_seed", 0ull);
          options.seed.stream_id = item.value().value("stream_id", 0ull);
        } else {
          throw std::invalid_argument("unknown fit option \"" + item.key() + "\"");
        }
      }
    }
    auto result = std::make_unique<garchx_fit_result>();
    result->result =
        fit(model->config.spec, model->config.theta, {returns, n}, {exog, n}, options);
    *out = result.release();
  });
}

garchx_status garchx_fit_result_to_json(const garchx_fit_result* result, char** out_json) {
  if (require(result && out_json, "garchx_fit_result_to_json: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] { *out_json = dup_string(fit_result_to_json(result->result)); });
}

garchx_status garchx_fit_result_load_json(const char* json_text, garchx_fit_result** out) {
  if (require(json_text && out, "garchx_fit_result_load_json: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    auto result = std::make_unique<garchx_fit_result>();
    result->result = fit_result_from_json(json_text);
    *out = result.release();
  });
}

garchx_status garchx_confidence_region_json(const garchx_fit_result* result,
                                            const char* params_csv, double level,
                                            char** out_json) {
  if (require(result && params_csv && out_json,
              "garchx_confidence_region_json: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    const std::vector<std::string> names = result->result.spec.param_names();
    std::vector<std::size_t> index_set;
    std::stringstream tokens(params_csv);
    std::string token;
    while (std::getline(tokens, token, ',')) {
      bool found = false;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == token) {
          index_set.push_back(i);
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("unknown parameter \"" + token + "\"");
    }
    const ConfidenceRegion region =
        confidence_region(result->result, index_set, 1.0 - level);
    nlohmann::json root;
    root["level"] = region.level;
    root["chi2_quantile"] = region.chi2_quantile;
    root["n_obs"] = region.n_obs;
    nlohmann::json coords = nlohmann::json::array();
    for (std::size_t pos = 0; pos < index_set.size(); ++pos) {
      const auto [lo, hi] = region.interval(pos);
      coords.push_back({{"name", names[index_set[pos]]},
                        {"estimate", region.center(static_cast<Eigen::Index>(pos))},
                        {"lower", lo},
                        {"upper", hi}});
    }
    root["coordinates"] = std::move(coords);
    nlohmann::json b_rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < region.b_sub.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < region.b_sub.cols(); ++j) row.push_back(region.b_sub(i, j));
      b_rows.push_back(std::move(row));
    }
    root["b_sub"] = std::move(b_rows);
    *out_json = dup_string(root.dump(2));
  });
}

void garchx_fit_result_free(garchx_fit_result* result) { delete result; }

garchx_status garchx_check_json(const garchx_model* model, const char* check_config_json,
                                char** out_report_json) {
  if (require(model && check_config_json && out_report_json,
              "garchx_check_json: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    const CheckConfig cfg = check_config_from_json(check_config_json);
    const ConditionReport report =
        cfg.moment_mode
            ? check_moment(model->config.spec, model->config.theta, cfg.m,
                           model->config.innovation, model->config.exogenous, cfg.n_mc, cfg.seed)
            : check_stationarity(model->config.spec, model->config.theta, cfg.alpha,
                                 model->config.innovation, model->config.exogenous, cfg.n_mc,
                                 cfg.seed);
    *out_report_json = dup_string(condition_report_to_json(report));
  });
}

garchx_status garchx_var_json(const garchx_model* model, const char* var_config_json,
                              char** out_result_json) {
  if (require(model && var_config_json && out_result_json,
              "garchx_var_json: null argument") != GARCHX_OK)
    return GARCHX_ERR_INVALID;
  return guarded([&] {
    const VarRunConfig cfg = var_config_from_json(var_config_json);
    const ModelConfig& mc = model->config;
    if (cfg.mode == "compare") {
      const MethodComparison comparison =
          compare_methods(mc.spec, mc.theta, mc.innovation, mc.exogenous, cfg.request, cfg.reps);
      *out_result_json = dup_string(method_comparison_to_json(comparison));
    } else {
      const VarResult result = compute_var(mc.spec, mc.theta, mc.innovation, mc.exogenous,
                                           cfg.request, cfg.portfolio_value);
      *out_result_json = dup_string(var_result_to_json(result));
    }
  });
}

}  // extern "C"
