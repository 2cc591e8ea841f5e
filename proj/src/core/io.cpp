#include "core/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

namespace garchx {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key()))
      fail("unknown key \"" + item.key() + "\" in " + context);
  }
}

const json& require_key(const json& object, const std::string& key, const std::string& context) {
  const auto it = object.find(key);
  if (it == object.end()) fail("missing key \"" + key + "\" in " + context);
  return *it;
}

double as_number(const json& value, const std::string& context) {
  if (!value.is_number()) fail(context + " must be a number");
  return value.get<double>();
}

std::string family_name(Family family) {
  switch (family) {
    case Family::StandardGarch: return "standard_garch";
    case Family::GjrGarch: return "gjr_garch";
    case Family::TGarch: return "tgarch";
    case Family::ApArch: return "aparch";
    case Family::FGarch: return "fgarch";
  }
  fail("unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "standard_garch") return Family::StandardGarch;
  if (name == "gjr_garch") return Family::GjrGarch;
  if (name == "tgarch") return Family::TGarch;
  if (name == "aparch") return Family::ApArch;
  if (name == "fgarch") return Family::FGarch;
  fail("unknown family \"" + name + "\"");
}

std::string u_transform_name(UTransform u) {
  switch (u) {
    case UTransform::Abs: return "abs";
    case UTransform::SqrtAbs: return "sqrt_abs";
    case UTransform::Square: return "square";
    case UTransform::PowerAbs: return "power_abs";
  }
  fail("unknown u_transform");
}

UTransform u_transform_from_name(const std::string& name) {
  if (name == "abs") return UTransform::Abs;
  if (name == "sqrt_abs") return UTransform::SqrtAbs;
  if (name == "square") return UTransform::Square;
  if (name == "power_abs") return UTransform::PowerAbs;
  fail("unknown u_transform \"" + name + "\"");
}

std::vector<double> as_double_vector(const json& value, const std::string& context) {
  if (!value.is_array()) fail(context + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& v : value) out.push_back(as_number(v, context + " entry"));
  return out;
}

SeedSpec seed_from_json(const json& value) {
  SeedSpec seed;
  if (value.is_null()) return seed;
  reject_unknown_keys(value, {"master_seed", "stream_id"}, "seed");
  if (value.contains("master_seed"))
    seed.master_seed = value.at("master_seed").get<std::uint64_t>();
  if (value.contains("stream_id")) seed.stream_id = value.at("stream_id").get<std::uint64_t>();
  return seed;
}

json seed_to_json(const SeedSpec& seed) {
  return json{{"master_seed", seed.master_seed}, {"stream_id", seed.stream_id}};
}

// Reads only the spec keys; unknown-key rejection happens at the caller,
// which knows the full allowed set for its document type.
ModelSpec spec_from_json(const json& value) {
  ModelSpec spec;
  spec.family = family_from_name(require_key(value, "family", "model").get<std::string>());
  switch (spec.family) {
    case Family::StandardGarch:
    case Family::GjrGarch: spec.delta = 2.0; break;
    case Family::TGarch: spec.delta = 1.0; break;
    default: spec.delta = as_number(require_key(value, "delta", "model"), "delta");
  }
  if (value.contains("delta")) spec.delta = as_number(value.at("delta"), "delta");
  spec.u_transform =
      u_transform_from_name(require_key(value, "u_transform", "model").get<std::string>());
  if (spec.u_transform == UTransform::PowerAbs)
    spec.power_p = as_number(require_key(value, "power_p", "model"), "power_p");
  if (spec.family == Family::FGarch)
    spec.fgarch_gamma = as_number(require_key(value, "fgarch_gamma", "model"), "fgarch_gamma");
  spec.validate();
  return spec;
}

json spec_to_json(const ModelSpec& spec) {
  json value{{"family", family_name(spec.family)},
             {"delta", spec.delta},
             {"u_transform", u_transform_name(spec.u_transform)}};
  if (spec.u_transform == UTransform::PowerAbs) value["power_p"] = spec.power_p;
  if (spec.family == Family::FGarch) value["fgarch_gamma"] = spec.fgarch_gamma;
  return value;
}

Theta theta_from_json(const json& value, const ModelSpec& spec) {
  reject_unknown_keys(value, {"values", "lower", "upper"}, "theta");
  Theta theta;
  theta.values = as_double_vector(require_key(value, "values", "theta"), "theta.values");
  theta.lower = as_double_vector(require_key(value, "lower", "theta"), "theta.lower");
  theta.upper = as_double_vector(require_key(value, "upper", "theta"), "theta.upper");
  theta.validate(spec);
  return theta;
}

json theta_to_json(const Theta& theta) {
  return json{{"values", theta.values}, {"lower", theta.lower}, {"upper", theta.upper}};
}

InnovationDist innovation_from_json(const json& value) {
  InnovationDist dist;
  if (value.is_null()) return dist;
  reject_unknown_keys(value, {"kind", "nu"}, "innovation");
  const std::string kind = require_key(value, "kind", "innovation").get<std::string>();
  if (kind == "gaussian") {
    dist.kind = InnovationKind::StdGaussian;
  } else if (kind == "student_t") {
    dist.kind = InnovationKind::StandardizedStudentT;
    dist.nu = as_number(require_key(value, "nu", "innovation"), "nu");
  } else {
    fail("unknown innovation kind \"" + kind + "\"");
  }
  dist.validate();
  return dist;
}

json innovation_to_json(const InnovationDist& dist) {
  if (dist.kind == InnovationKind::StdGaussian) return json{{"kind", "gaussian"}};
  return json{{"kind", "student_t"}, {"nu", dist.nu}};
}

ExogProcess exogenous_from_json(const json& value) {
  ExogProcess process;
  if (value.is_null()) return process;
  const std::string kind = require_key(value, "kind", "exogenous").get<std::string>();
  if (kind == "iid_gaussian") {
    reject_unknown_keys(value, {"kind", "mean", "stddev", "burn_in"}, "exogenous");
    process.kind = ExogKind::IidGaussian;
    if (value.contains("mean")) process.mean = as_number(value.at("mean"), "mean");
    if (value.contains("stddev")) process.stddev = as_number(value.at("stddev"), "stddev");
  } else if (kind == "iid_cauchy") {
    reject_unknown_keys(value, {"kind", "location", "scale", "burn_in"}, "exogenous");
    process.kind = ExogKind::IidCauchy;
    if (value.contains("location")) process.location = as_number(value.at("location"), "location");
    if (value.contains("scale")) process.scale = as_number(value.at("scale"), "scale");
  } else if (kind == "ar1") {
    reject_unknown_keys(value, {"kind", "phi", "noise", "noise_scale", "burn_in"}, "exogenous");
    process.kind = ExogKind::Ar1;
    process.phi = as_number(require_key(value, "phi", "exogenous"), "phi");
    if (value.contains("noise")) {
      const std::string noise = value.at("noise").get<std::string>();
      if (noise == "gaussian") process.noise = ExogNoiseKind::Gaussian;
      else if (noise == "cauchy") process.noise = ExogNoiseKind::Cauchy;
      else fail("unknown exogenous noise \"" + noise + "\"");
    }
    if (value.contains("noise_scale"))
      process.noise_scale = as_number(value.at("noise_scale"), "noise_scale");
  } else if (kind == "shifted_iid") {
    reject_unknown_keys(value, {"kind", "shift", "burn_in"}, "exogenous");
    process.kind = ExogKind::ShiftedIid;
    process.shift = as_number(require_key(value, "shift", "exogenous"), "shift");
  } else {
    fail("unknown exogenous kind \"" + kind + "\"");
  }
  if (value.contains("burn_in")) process.burn_in = value.at("burn_in").get<long>();
  process.validate();
  return process;
}

json exogenous_to_json(const ExogProcess& process) {
  json value;
  switch (process.kind) {
    case ExogKind::IidGaussian:
      value = {{"kind", "iid_gaussian"}, {"mean", process.mean}, {"stddev", process.stddev}};
      break;
    case ExogKind::IidCauchy:
      value = {{"kind", "iid_cauchy"}, {"location", process.location}, {"scale", process.scale}};
      break;
    case ExogKind::Ar1:
      value = {{"kind", "ar1"},
               {"phi", process.phi},
               {"noise", process.noise == ExogNoiseKind::Gaussian ? "gaussian" : "cauchy"},
               {"noise_scale", process.noise_scale}};
      break;
    case ExogKind::ShiftedIid:
      value = {{"kind", "shifted_iid"}, {"shift", process.shift}};
      break;
  }
  value["burn_in"] = process.burn_in;
  return value;
}

json parse_text(const std::string& json_text, const std::string& context) {
  json value = json::parse(json_text, nullptr, false);
  if (value.is_discarded()) fail("malformed JSON in " + context);
  return value;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& value, const std::string& context) {
  if (!value.is_array() || value.empty()) fail(context + " must be a non-empty array");
  const Eigen::Index rows = static_cast<Eigen::Index>(value.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(value.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = value.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) fail(context + " is ragged");
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = as_number(row.at(static_cast<std::size_t>(j)), context);
  }
  return m;
}

}  // namespace

ModelConfig model_config_from_json(const std::string& json_text) {
  const json root = parse_text(json_text, "model config");
  reject_unknown_keys(root, {"family", "delta", "u_transform", "power_p", "fgarch_gamma",
                             "theta", "innovation", "exogenous"},
                      "model config");
  ModelConfig config;
  config.spec = spec_from_json(root);
  config.theta = theta_from_json(require_key(root, "theta", "model config"), config.spec);
  if (root.contains("innovation")) config.innovation = innovation_from_json(root.at("innovation"));
  if (root.contains("exogenous")) config.exogenous = exogenous_from_json(root.at("exogenous"));
  return config;
}

std::string model_config_to_json(const ModelConfig& config) {
  json root = spec_to_json(config.spec);
  root["theta"] = theta_to_json(config.theta);
  root["innovation"] = innovation_to_json(config.innovation);
  root["exogenous"] = exogenous_to_json(config.exogenous);
  return root.dump(2);
}

SimConfig sim_config_from_json(const std::string& json_text) {
  const json root = parse_text(json_text, "sim config");
  reject_unknown_keys(root, {"horizon", "burn_in", "r0", "sigma0", "seed"}, "sim config");
  SimConfig cfg;
  cfg.horizon = require_key(root, "horizon", "sim config").get<long>();
  if (root.contains("burn_in")) cfg.burn_in = root.at("burn_in").get<long>();
  if (root.contains("r0")) cfg.r0 = as_number(root.at("r0"), "r0");
  if (root.contains("seed")) cfg.seed = seed_from_json(root.at("seed"));
  if (root.contains("sigma0")) {
    const json& s0 = root.at("sigma0");
    reject_unknown_keys(s0, {"kind", "value", "log_mean", "log_sdev"}, "sigma0");
    const std::string kind = require_key(s0, "kind", "sigma0").get<std::string>();
    if (kind == "point_mass") {
      cfg.sigma0.kind = Sigma0Kind::PointMass;
      if (s0.contains("value")) cfg.sigma0.value = as_number(s0.at("value"), "sigma0.value");
    } else if (kind == "log_normal") {
      cfg.sigma0.kind = Sigma0Kind::LogNormal;
      if (s0.contains("log_mean")) cfg.sigma0.log_mean = as_number(s0.at("log_mean"), "log_mean");
      if (s0.contains("log_sdev")) cfg.sigma0.log_sdev = as_number(s0.at("log_sdev"), "log_sdev");
    } else {
      fail("unknown sigma0 kind \"" + kind + "\"");
    }
  }
  cfg.validate();
  return cfg;
}

CheckConfig check_config_from_json(const std::string& json_text) {
  const json root = parse_text(json_text, "check config");
  reject_unknown_keys(root, {"mode", "alpha", "m", "n_mc", "seed"}, "check config");
  CheckConfig cfg;
  if (root.contains("mode")) {
    const std::string mode = root.at("mode").get<std::string>();
    if (mode == "moment") cfg.moment_mode = true;
    else if (mode == "stationarity") cfg.moment_mode = false;
    else fail("unknown check mode \"" + mode + "\"");
  }
  if (root.contains("alpha")) cfg.alpha = as_number(root.at("alpha"), "alpha");
  if (root.contains("m")) cfg.m = root.at("m").get<unsigned>();
  if (root.contains("n_mc")) cfg.n_mc = root.at("n_mc").get<std::size_t>();
  if (root.contains("seed")) cfg.seed = seed_from_json(root.at("seed"));
  return cfg;
}

VarRunConfig var_config_from_json(const std::string& json_text) {
  const json root = parse_text(json_text, "var config");
  reject_unknown_keys(root,
                      {"method", "level", "horizon", "n", "burn_in", "reps", "seed",
                       "sigma0_delta", "r0", "portfolio_value", "threads"},
                      "var config");
  VarRunConfig cfg;
  if (root.contains("method")) {
    cfg.mode = root.at("method").get<std::string>();
    if (cfg.mode != "indep" && cfg.mode != "ergodic" && cfg.mode != "compare")
      fail("unknown var method \"" + cfg.mode + "\"");
  }
  cfg.request.method =
      cfg.mode == "ergodic" ? VarMethod::ErgodicSinglePath : VarMethod::IndependentPaths;
  if (root.contains("level")) cfg.request.level = as_number(root.at("level"), "level");
  if (root.contains("horizon")) cfg.request.horizon = root.at("horizon").get<long>();
  if (root.contains("n")) cfg.request.n = root.at("n").get<std::size_t>();
  if (root.contains("burn_in")) cfg.request.burn_in = root.at("burn_in").get<long>();
  if (root.contains("reps")) cfg.reps = root.at("reps").get<std::size_t>();
  if (root.contains("seed")) cfg.request.seed = seed_from_json(root.at("seed"));
  if (root.contains("sigma0_delta"))
    cfg.request.sigma0_delta = as_number(root.at("sigma0_delta"), "sigma0_delta");
  if (root.contains("r0")) cfg.request.r0 = as_number(root.at("r0"), "r0");
  if (root.contains("portfolio_value"))
    cfg.portfolio_value = as_number(root.at("portfolio_value"), "portfolio_value");
  if (root.contains("threads")) cfg.request.n_threads = root.at("threads").get<unsigned>();
  cfg.request.validate();
  return cfg;
}

std::string fit_result_to_json(const FitResult& result) {
  json root = spec_to_json(result.spec);
  json trace{{"iterations", result.iterations},
             {"converged", result.converged},
             {"grad_norm", result.grad_norm},
             {"at_boundary", result.at_boundary}};
  root["param_names"] = result.spec.param_names();
  root["theta_hat"] = theta_to_json(result.theta_hat);
  root["loglik"] = result.loglik;
  root["kappa_hat"] = result.kappa_hat;
  root["n_obs"] = result.n_obs;
  root["a_matrix"] = matrix_to_json(result.a_matrix);
  root["b_matrix"] = result.b_valid ? matrix_to_json(result.b_matrix) : json();
  root["trace"] = std::move(trace);
  return root.dump(2);
}

FitResult fit_result_from_json(const std::string& json_text) {
  const json root = parse_text(json_text, "fit result");
  reject_unknown_keys(root,
                      {"family", "delta", "u_transform", "power_p", "fgarch_gamma",
                       "param_names", "theta_hat", "loglik", "kappa_hat", "n_obs", "a_matrix",
                       "b_matrix", "trace"},
                      "fit result");
  FitResult result;
  result.spec = spec_from_json([&] {
    json spec_only;
    for (const char* key : {"family", "delta", "u_transform", "power_p", "fgarch_gamma"})
      if (root.contains(key)) spec_only[key] = root.at(key);
    return spec_only;
  }());
  result.theta_hat = theta_from_json(require_key(root, "theta_hat", "fit result"), result.spec);
  result.loglik = as_number(require_key(root, "loglik", "fit result"), "loglik");
  result.kappa_hat = as_number(require_key(root, "kappa_hat", "fit result"), "kappa_hat");
  result.n_obs = require_key(root, "n_obs", "fit result").get<std::size_t>();
  result.a_matrix = matrix_from_json(require_key(root, "a_matrix", "fit result"), "a_matrix");
  const json& b = require_key(root, "b_matrix", "fit result");
  result.b_valid = !b.is_null();
  if (result.b_valid) result.b_matrix = matrix_from_json(b, "b_matrix");
  const json& trace = require_key(root, "trace", "fit result");
  reject_unknown_keys(trace, {"iterations", "converged", "grad_norm", "at_boundary"}, "trace");
  result.iterations = trace.at("iterations").get<int>();
  result.converged = trace.at("converged").get<bool>();
  result.grad_norm = as_number(trace.at("grad_norm"), "grad_norm");
  result.at_boundary = trace.at("at_boundary").get<bool>();
  return result;
}

std::string condition_report_to_json(const ConditionReport& report) {
  const auto estimate = [](const McEstimate& e) {
    return json{{"value", e.value}, {"std_error", e.std_error}};
  };
  json root{{"exponent", report.exponent},
            {"c_term", estimate(report.c_term)},
            {"g_term", estimate(report.g_term)},
            {"u_term", estimate(report.u_term)},
            {"eps_term", estimate(report.eps_term)},
            {"c_closed_form", report.c_closed_form ? json(*report.c_closed_form) : json()},
            {"g_closed_form", report.g_closed_form ? json(*report.g_closed_form) : json()}};
  switch (report.verdict) {
    case ConditionVerdict::Satisfied: root["verdict"] = "satisfied"; break;
    case ConditionVerdict::Violated: root["verdict"] = "violated"; break;
    case ConditionVerdict::Inconclusive: root["verdict"] = "inconclusive"; break;
  }
  return root.dump(2);
}

std::string var_result_to_json(const VarResult& result) {
  json root{{"var_logreturn", result.var_logreturn},
            {"var_return", result.var_return},
            {"var_value", result.var_value},
            {"portfolio_value", result.portfolio_value},
            {"draws_used", result.draws_used},
            {"method", result.method == VarMethod::IndependentPaths ? "indep" : "ergodic"},
            {"runtime_seconds", result.runtime_seconds}};
  return root.dump(2);
}

std::string method_comparison_to_json(const MethodComparison& comparison) {
  json root{{"reps", comparison.reps},
            {"t_stat", comparison.t_stat},
            {"p_value", comparison.p_value},
            {"var_samples_m1", comparison.var_samples_m1},
            {"var_samples_m2", comparison.var_samples_m2}};
  return root.dump(2);
}

void write_series_csv(const std::string& path, const PathSample& sample) {
  std::FILE* file = std::fopen(path.c_str(), "w");
  if (!file) throw IoError("cannot open \"" + path + "\" for writing");
  std::fputs("t,R,x,sigma_delta,eps\n", file);
  for (std::size_t i = 0; i < sample.returns.size(); ++i) {
    std::fprintf(file, "%zu,%.17g,%.17g,%.17g,%.17g\n", i + 1, sample.returns[i],
                 sample.exog[i], sample.vol_delta[i], sample.innovations[i]);
  }
  std::fclose(file);
}

std::pair<std::vector<double>, std::vector<double>> load_series_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open \"" + path + "\"");
  std::string line;
  if (!std::getline(file, line)) fail("series file \"" + path + "\": no data rows");
  // Header: t,R,x with optional extra columns.
  {
    std::stringstream header(line);
    std::string col;
    const char* expected[] = {"t", "R", "x"};
    for (const char* want : expected) {
      if (!std::getline(header, col, ',') || col != want)
        fail("series file \"" + path + "\": header must start with t,R,x");
    }
  }
  std::vector<double> returns, exog;
  std::size_t row = 0;
  long prev_t = 0;
  auto parse_double = [&](const std::string& token, const char* what) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
      fail("series file \"" + path + "\": bad " + what + " at row " + std::to_string(row));
    if (!std::isfinite(value))
      fail("series file \"" + path + "\": non-finite " + what + " at row " + std::to_string(row));
    return value;
  };
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    ++row;
    std::stringstream cells(line);
    std::string t_token, r_token, x_token;
    if (!std::getline(cells, t_token, ',') || !std::getline(cells, r_token, ',') ||
        !std::getline(cells, x_token, ','))
      fail("series file \"" + path + "\": short row at row " + std::to_string(row));
    long t_value = 0;
    {
      const char* begin = t_token.data();
      const char* end = begin + t_token.size();
      const auto [ptr, ec] = std::from_chars(begin, end, t_value);
      if (ec != std::errc() || ptr != end)
        fail("series file \"" + path + "\": bad t at row " + std::to_string(row));
    }
    if (row > 1 && t_value <= prev_t)
      fail("series file \"" + path + "\": t must be strictly increasing at row " +
           std::to_string(row));
    prev_t = t_value;
    returns.push_back(parse_double(r_token, "R"));
    exog.push_back(parse_double(x_token, "x"));
  }
  if (returns.empty()) fail("series file \"" + path + "\": no data rows");
  return {std::move(returns), std::move(exog)};
}

namespace {
constexpr char kPathMagic[4] = {'G', 'X', 'P', 'C'};
constexpr std::uint32_t kPathVersion = 1;
}  // namespace

void write_path_binary(const std::string& path, const PathSample& sample) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open \"" + path + "\" for writing");
  file.write(kPathMagic, 4);
  file.write(reinterpret_cast<const char*>(&kPathVersion), sizeof(kPathVersion));
  const std::uint64_t n = sample.returns.size();
  file.write(reinterpret_cast<const char*>(&n), sizeof(n));
  file.write(reinterpret_cast<const char*>(&sample.seed), sizeof(sample.seed));
  for (const auto* array : {&sample.returns, &sample.vol_delta, &sample.exog,
                            &sample.innovations})
    file.write(reinterpret_cast<const char*>(array->data()),
               static_cast<std::streamsize>(n * sizeof(double)));
  if (!file) throw IoError("write failed for \"" + path + "\"");
}

PathSample load_path_binary(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open \"" + path + "\"");
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  file.read(magic, 4);
  file.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (!file || std::memcmp(magic, kPathMagic, 4) != 0)
    fail("\"" + path + "\" is not a path cache file");
  if (version != kPathVersion)
    fail("unsupported path cache version " + std::to_string(version));
  file.read(reinterpret_cast<char*>(&n), sizeof(n));
  PathSample sample;
  file.read(reinterpret_cast<char*>(&sample.seed), sizeof(sample.seed));
  for (auto* array : {&sample.returns, &sample.vol_delta, &sample.exog, &sample.innovations}) {
    array->resize(n);
    file.read(reinterpret_cast<char*>(array->data()),
              static_cast<std::streamsize>(n * sizeof(double)));
  }
  if (!file) fail("\"" + path + "\" is truncated");
  return sample;
}

}  // namespace garchx
