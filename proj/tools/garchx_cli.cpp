// garchx command-line tool. Talks to the library exclusively through the
// C API in garchx/garchx.h; JSON assembly and table rendering live here.
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical failure.
// Failures also emit a machine-readable JSON object on stderr.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>

#include "garchx/garchx.h"

namespace {

using nlohmann::json;

int fail_with(garchx_status status, const std::string& fallback_message) {
  const char* detail = garchx_last_error();
  const std::string message = (detail && *detail) ? detail : fallback_message;
  const char* kind = status == GARCHX_ERR_NUMERIC ? "numeric"
                     : status == GARCHX_ERR_IO    ? "io"
                                                  : "validation";
  json error{{"error", {{"code", static_cast<int>(status)}, {"kind", kind}, {"message", message}}}};
  std::fprintf(stderr, "%s\n", error.dump().c_str());
  return status == GARCHX_ERR_NUMERIC ? 2 : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open \"" + path + "\"");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

struct ModelHandle {
  garchx_model* ptr = nullptr;
  ~ModelHandle() { garchx_model_free(ptr); }
};

struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { garchx_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int load_model_text(const std::string& text, const std::string& what, ModelHandle& model) {
  const garchx_status status = garchx_model_from_json(text.c_str(), &model.ptr);
  if (status != GARCHX_OK) return fail_with(status, "invalid model in " + what);
  return 0;
}

int load_model_file(const std::string& path, ModelHandle& model) {
  return load_model_text(read_file(path), path, model);
}

json seed_json(std::uint64_t seed) {
  return json{{"master_seed", seed}, {"stream_id", 0}};
}

void print_check_table(const json& report) {
  std::printf("%-22s %14s %14s %14s\n", "term", "estimate", "std error", "closed form");
  const auto row = [](const char* name, const json& est, const json& closed) {
    char closed_text[32] = "-";
    if (!closed.is_null()) std::snprintf(closed_text, sizeof(closed_text), "%.6g", closed.get<double>());
    std::printf("%-22s %14.6g %14.3g %14s\n", name, est.at("value").get<double>(),
                est.at("std_error").get<double>(), closed_text);
  };
  row("E[c(eps)^a]", report.at("c_term"), report.at("c_closed_form"));
  row("E[g(eps)^a]", report.at("g_term"), report.at("g_closed_form"));
  row("E[u(x)^a]", report.at("u_term"), json());
  row("E[|eps|^(delta a)]", report.at("eps_term"), json());
  std::printf("exponent a = %g\nverdict: %s\n", report.at("exponent").get<double>(),
              report.at("verdict").get<std::string>().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GARCHX(1,1) toolkit: simulate, diagnose, fit and risk-report"};
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: GARCHX_THREADS or hardware)");

  auto* sim_cmd = app.add_subcommand("simulate", "simulate a path and write a series CSV");
  std::string sim_config_path, sim_out, sim_out_binary;
  sim_cmd->add_option("--config", sim_config_path, "run config JSON")->required();
  sim_cmd->add_option("--out", sim_out, "output CSV path")->required();
  sim_cmd->add_option("--out-binary", sim_out_binary, "optional binary path cache");

  auto* fit_cmd = app.add_subcommand("fit", "fit a model to a series CSV");
  std::string fit_data, fit_model, fit_out;
  std::uint64_t fit_seed = 0;
  int fit_multi_start = 1;
  fit_cmd->add_option("--data", fit_data, "series CSV (t,R,x)")->required();
  fit_cmd->add_option("--model", fit_model, "model JSON")->required();
  fit_cmd->add_option("--out", fit_out, "output fit JSON")->required();
  fit_cmd->add_option("--multi-start", fit_multi_start, "number of optimizer starts");
  fit_cmd->add_option("--seed", fit_seed, "seed for multi-start jitter");

  auto* check_cmd = app.add_subcommand("check", "stationarity / moment condition report");
  std::string check_model, check_out;
  double check_alpha = 1.0;
  unsigned check_m = 0;
  std::size_t check_mc = 1000000;
  std::uint64_t check_seed = 0;
  check_cmd->add_option("--model", check_model, "model JSON")->required();
  check_cmd->add_option("--alpha", check_alpha, "stationarity exponent in (0,1]");
  check_cmd->add_option("--moment", check_m, "check the m*delta moment instead");
  check_cmd->add_option("--mc", check_mc, "Monte Carlo sample size");
  check_cmd->add_option("--seed", check_seed, "master seed");
  check_cmd->add_option("--out", check_out, "also write the JSON report here");

  auto* var_cmd = app.add_subcommand("var", "value at risk");
  std::string var_model, var_method = "indep", var_out;
  double var_level = 0.99;
  long var_horizon = 10, var_burn_in = 1000;
  std::size_t var_n = 100000, var_reps = 500;
  std::uint64_t var_seed = 0;
  double var_sigma0_delta = -1.0, var_r0 = 0.0, var_portfolio = 1.0;
  var_cmd->add_option("--model", var_model, "model JSON")->required();
  var_cmd->add_option("--method", var_method, "indep | ergodic | compare");
  var_cmd->add_option("--level", var_level, "VaR level, e.g. 0.99");
  var_cmd->add_option("--horizon", var_horizon, "h, steps");
  var_cmd->add_option("--n", var_n, "paths (indep) or windows (ergodic)");
  var_cmd->add_option("--burn-in", var_burn_in, "N_b burn-in steps");
  var_cmd->add_option("--reps", var_reps, "replications for compare");
  var_cmd->add_option("--seed", var_seed, "master seed");
  var_cmd->add_option("--sigma0-delta", var_sigma0_delta, "start sigma^delta (<0: omega)");
  var_cmd->add_option("--r0", var_r0, "start return");
  var_cmd->add_option("--portfolio", var_portfolio, "portfolio value P_t");
  var_cmd->add_option("--out", var_out, "also write the JSON result here");

  auto* ci_cmd = app.add_subcommand("ci", "confidence region from a fit result");
  std::string ci_fit, ci_params = "omega";
  double ci_level = 0.95;
  ci_cmd->add_option("--fit", ci_fit, "fit result JSON")->required();
  ci_cmd->add_option("--params", ci_params, "comma-separated parameter names");
  ci_cmd->add_option("--level", ci_level, "confidence level, e.g. 0.95");

  app.add_subcommand("version", "print the library version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("version")) {
      std::printf("garchx %s\n", garchx_version());
      return 0;
    }

    if (app.got_subcommand("simulate")) {
      const json root = json::parse(read_file(sim_config_path));
      if (!root.contains("model")) throw std::runtime_error("run config: missing \"model\"");
      json sim = root.value("sim", json::object());
      if (root.contains("seed") && !sim.contains("seed")) sim["seed"] = root.at("seed");
      ModelHandle model;
      if (int rc = load_model_text(root.at("model").dump(), sim_config_path, model)) return rc;
      garchx_path* path = nullptr;
      garchx_status status = garchx_simulate(model.ptr, sim.dump().c_str(), &path);
      if (status != GARCHX_OK) return fail_with(status, "simulation failed");
      std::unique_ptr<garchx_path, void (*)(garchx_path*)> guard(path, garchx_path_free);
      status = garchx_path_write_csv(path, sim_out.c_str());
      if (status != GARCHX_OK) return fail_with(status, "cannot write " + sim_out);
      if (!sim_out_binary.empty()) {
        status = garchx_path_write_binary(path, sim_out_binary.c_str());
        if (status != GARCHX_OK) return fail_with(status, "cannot write " + sim_out_binary);
      }
      std::printf("wrote %zu rows to %s\n", garchx_path_length(path), sim_out.c_str());
      return 0;
    }

    if (app.got_subcommand("fit")) {
      ModelHandle model;
      if (int rc = load_model_file(fit_model, model)) return rc;
      garchx_series* series = nullptr;
      garchx_status status = garchx_series_load_csv(fit_data.c_str(), &series);
      if (status != GARCHX_OK) return fail_with(status, "cannot load " + fit_data);
      std::unique_ptr<garchx_series, void (*)(garchx_series*)> series_guard(series,
                                                                            garchx_series_free);
      const json options{{"multi_start", fit_multi_start}, {"seed", seed_json(fit_seed)}};
      garchx_fit_result* result = nullptr;
      status = garchx_fit(model.ptr, garchx_series_returns(series), garchx_series_exog(series),
                          garchx_series_length(series), options.dump().c_str(), &result);
      if (status != GARCHX_OK) return fail_with(status, "fit failed");
      std::unique_ptr<garchx_fit_result, void (*)(garchx_fit_result*)> result_guard(
          result, garchx_fit_result_free);
      StringHandle text;
      status = garchx_fit_result_to_json(result, &text.ptr);
      if (status != GARCHX_OK) return fail_with(status, "cannot serialize fit result");
      write_file(fit_out, text.str());
      const json summary = json::parse(text.str());
      std::printf("loglik %.8g  converged %s  n_obs %zu\n", summary.at("loglik").get<double>(),
                  summary.at("trace").at("converged").get<bool>() ? "yes" : "no",
                  summary.at("n_obs").get<std::size_t>());
      const auto& names = summary.at("param_names");
      const auto& values = summary.at("theta_hat").at("values");
      for (std::size_t i = 0; i < names.size(); ++i)
        std::printf("  %-14s %.8g\n", names.at(i).get<std::string>().c_str(),
                    values.at(i).get<double>());
      return 0;
    }

    if (app.got_subcommand("check")) {
      ModelHandle model;
      if (int rc = load_model_file(check_model, model)) return rc;
      json config{{"n_mc", check_mc}, {"seed", seed_json(check_seed)}};
      if (check_cmd->count("--moment") > 0) {
        config["mode"] = "moment";
        config["m"] = check_m;
      } else {
        config["mode"] = "stationarity";
        config["alpha"] = check_alpha;
      }
      StringHandle report;
      const garchx_status status =
          garchx_check_json(model.ptr, config.dump().c_str(), &report.ptr);
      if (status != GARCHX_OK) return fail_with(status, "check failed");
      if (!check_out.empty()) write_file(check_out, report.str());
      print_check_table(json::parse(report.str()));
      return 0;
    }

    if (app.got_subcommand("var")) {
      ModelHandle model;
      if (int rc = load_model_file(var_model, model)) return rc;
      const json config{{"method", var_method},
                        {"level", var_level},
                        {"horizon", var_horizon},
                        {"n", var_n},
                        {"burn_in", var_burn_in},
                        {"reps", var_reps},
                        {"seed", seed_json(var_seed)},
                        {"sigma0_delta", var_sigma0_delta},
                        {"r0", var_r0},
                        {"portfolio_value", var_portfolio},
                        {"threads", threads}};
      StringHandle result;
      const garchx_status status =
          garchx_var_json(model.ptr, config.dump().c_str(), &result.ptr);
      if (status != GARCHX_OK) return fail_with(status, "var computation failed");
      if (!var_out.empty()) write_file(var_out, result.str());
      const json root = json::parse(result.str());
      if (var_method == "compare") {
        std::printf("reps %zu\nWelch t = %.4f\np-value = %.4f\n",
                    root.at("reps").get<std::size_t>(), root.at("t_stat").get<double>(),
                    root.at("p_value").get<double>());
      } else {
        std::printf("%-18s %16s\n", "quantity", "value");
        std::printf("%-18s %16.8g\n", "VaR (log-return)", root.at("var_logreturn").get<double>());
        std::printf("%-18s %16.8g\n", "VaR (return)", root.at("var_return").get<double>());
        std::printf("%-18s %16.8g\n", "VaR (value)", root.at("var_value").get<double>());
        std::printf("%-18s %16llu\n", "draws used",
                    static_cast<unsigned long long>(root.at("draws_used").get<std::uint64_t>()));
      }
      return 0;
    }

    if (app.got_subcommand("ci")) {
      garchx_fit_result* result = nullptr;
      garchx_status status = garchx_fit_result_load_json(read_file(ci_fit).c_str(), &result);
      if (status != GARCHX_OK) return fail_with(status, "cannot load " + ci_fit);
      std::unique_ptr<garchx_fit_result, void (*)(garchx_fit_result*)> guard(
          result, garchx_fit_result_free);
      StringHandle region;
      status = garchx_confidence_region_json(result, ci_params.c_str(), ci_level, &region.ptr);
      if (status != GARCHX_OK) return fail_with(status, "confidence region failed");
      const json root = json::parse(region.str());
      std::printf("level %.4g, chi2 quantile %.6g, n = %zu\n", root.at("level").get<double>(),
                  root.at("chi2_quantile").get<double>(), root.at("n_obs").get<std::size_t>());
      std::printf("%-14s %14s %14s %14s\n", "parameter", "estimate", "lower", "upper");
      for (const auto& coord : root.at("coordinates"))
        std::printf("%-14s %14.8g %14.8g %14.8g\n", coord.at("name").get<std::string>().c_str(),
                    coord.at("estimate").get<double>(), coord.at("lower").get<double>(),
                    coord.at("upper").get<double>());
      return 0;
    }
  } catch (const std::exception& e) {
    json error{{"error", {{"code", 1}, {"kind", "validation"}, {"message", e.what()}}}};
    std::fprintf(stderr, "%s\n", error.dump().c_str());
    return 1;
  }
  return 1;
}
