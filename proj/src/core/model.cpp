#include "core/model.hpp"

#include <cmath>
#include <stdexcept>

namespace garchx {

namespace {

// Parameter slots shared by all families.
constexpr std::size_t kOmega = 0;
constexpr std::size_t kLambda = 1;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::size_t ModelSpec::param_count() const {
  switch (family) {
    case Family::StandardGarch: return 4;
    case Family::GjrGarch: return 5;
    case Family::TGarch: return 5;
    case Family::ApArch: return 5;
    case Family::FGarch: return 6;
  }
  throw std::invalid_argument("ModelSpec: unknown family");
}

std::vector<std::string> ModelSpec::param_names() const {
  switch (family) {
    case Family::StandardGarch: return {"omega", "lambda", "alpha1", "beta1"};
    case Family::GjrGarch: return {"omega", "lambda", "alpha1", "beta1", "gamma1"};
    case Family::TGarch: return {"omega", "lambda", "alpha1_plus", "alpha1_minus", "beta1"};
    case Family::ApArch: return {"omega", "lambda", "alpha1", "beta1", "eta1"};
    case Family::FGarch: return {"omega", "lambda", "alpha1", "beta1", "eta1", "eta2"};
  }
  throw std::invalid_argument("ModelSpec: unknown family");
}

std::size_t ModelSpec::beta_index() const {
  return family == Family::TGarch ? 4 : 3;
}

void ModelSpec::validate() const {
  require(delta > 0.0, "ModelSpec: delta must be positive");
  if (family == Family::StandardGarch || family == Family::GjrGarch)
    require(delta == 2.0, "ModelSpec: delta must equal 2 for this family");
  if (family == Family::TGarch)
    require(delta == 1.0, "ModelSpec: delta must equal 1 for TGarch");
  if (u_transform == UTransform::PowerAbs)
    require(power_p > 0.0, "ModelSpec: PowerAbs exponent must be positive");
  if (family == Family::FGarch)
    require(fgarch_gamma >= 1.0, "ModelSpec: FGarch gamma must be >= 1");
}

ModelSpec ModelSpec::standard_garch(UTransform u) { return {Family::StandardGarch, 2.0, u}; }
ModelSpec ModelSpec::gjr_garch(UTransform u) { return {Family::GjrGarch, 2.0, u}; }
ModelSpec ModelSpec::tgarch(UTransform u) { return {Family::TGarch, 1.0, u}; }
ModelSpec ModelSpec::aparch(double delta, UTransform u) { return {Family::ApArch, delta, u}; }
ModelSpec ModelSpec::fgarch(double delta, double gamma, UTransform u) {
  ModelSpec spec{Family::FGarch, delta, u};
  spec.fgarch_gamma = gamma;
  return spec;
}

void Theta::validate(const ModelSpec& spec) const {
  const std::size_t m = spec.param_count();
  require(values.size() == m && lower.size() == m && upper.size() == m,
          "Theta: vector lengths must match the family parameter count");
  for (std::size_t i = 0; i < m; ++i) {
    require(std::isfinite(values[i]) && std::isfinite(lower[i]) && std::isfinite(upper[i]),
            "Theta: coordinates and bounds must be finite");
    require(lower[i] <= values[i] && values[i] <= upper[i],
            "Theta: values must lie inside the box");
    require(lower[i] <= upper[i], "Theta: lower bound exceeds upper bound");
  }
  require(lower[kOmega] > 0.0, "Theta: omega lower bound must be strictly positive");
  require(lower[kLambda] >= 0.0, "Theta: lambda must be non-negative");

  const std::size_t bi = spec.beta_index();
  require(lower[bi] >= 0.0 && upper[bi] < 1.0, "Theta: beta1 must lie in [0,1)");

  switch (spec.family) {
    case Family::StandardGarch:
      require(lower[2] >= 0.0, "Theta: alpha1 must be non-negative");
      break;
    case Family::GjrGarch:
      require(lower[2] >= 0.0, "Theta: alpha1 must be non-negative");
      require(lower[4] >= 0.0, "Theta: gamma1 must be non-negative");
      break;
    case Family::TGarch:
      require(lower[2] >= 0.0 && lower[3] >= 0.0,
              "Theta: alpha1_plus and alpha1_minus must be non-negative");
      break;
    case Family::ApArch:
    case Family::FGarch:
      require(lower[2] > 0.0, "Theta: alpha1 lower bound must be strictly positive");
      require(lower[4] > -1.0 && upper[4] < 1.0, "Theta: eta1 must lie in (-1,1)");
      break;
  }
}

double u1_eval(const ModelSpec& spec, double x) {
  switch (spec.u_transform) {
    case UTransform::Abs: return std::fabs(x);
    case UTransform::SqrtAbs: return std::sqrt(std::fabs(x));
    case UTransform::Square: return x * x;
    case UTransform::PowerAbs: return std::pow(std::fabs(x), spec.power_p);
  }
  throw std::invalid_argument("u1_eval: unknown transform");
}

double u_eval(const ModelSpec& spec, const Theta& theta, double x) {
  return theta[kLambda] * u1_eval(spec, x);
}

namespace {

// ARCH contribution of the return-driven rewriting, zero-order term only.
double arch_term_obs(const ModelSpec& spec, const Theta& theta, double r) {
  switch (spec.family) {
    case Family::StandardGarch:
      return theta[2] * r * r;
    case Family::GjrGarch:
      return (theta[2] + (r < 0.0 ? theta[4] : 0.0)) * r * r;
    case Family::TGarch:
      return r > 0.0 ? theta[2] * r : theta[3] * (-r);
    case Family::ApArch:
      return theta[2] * std::pow(std::fabs(r) - theta[4] * r, spec.delta);
    case Family::FGarch:
      // The eta2 shift does not fold into observed returns; the ARCH term
      // stays inside c and is evaluated at eps = R / sigma.
      return 0.0;
  }
  throw std::invalid_argument("arch_term_obs: unknown family");
}

}  // namespace

double g_eval(const ModelSpec& spec, const Theta& theta, double eps_or_ret, VolInput input) {
  if (input == VolInput::Shock) return theta[kOmega];
  return theta[kOmega] + arch_term_obs(spec, theta, eps_or_ret);
}

double c_eval(const ModelSpec& spec, const Theta& theta, double eps) {
  switch (spec.family) {
    case Family::StandardGarch:
      return theta[3] + theta[2] * eps * eps;
    case Family::GjrGarch:
      return theta[3] + (theta[2] + (eps < 0.0 ? theta[4] : 0.0)) * eps * eps;
    case Family::TGarch:
      // alpha1_plus * eps^+ + alpha1_minus * |eps^-| + beta1; non-negative
      // on the alpha >= 0 box without clamping.
      return theta[4] + (eps > 0.0 ? theta[2] * eps : theta[3] * (-eps));
    case Family::ApArch:
      return theta[3] + theta[2] * std::pow(std::fabs(eps) - theta[4] * eps, spec.delta);
    case Family::FGarch: {
      const double z = eps - theta[5];
      return theta[3] + theta[2] * std::pow(std::fabs(z) - theta[4] * z, spec.fgarch_gamma);
    }
  }
  throw std::invalid_argument("c_eval: unknown family");
}

double vol_step(const ModelSpec& spec, const Theta& theta, double sigma_delta_prev,
                double eps_prev, double x_prev) {
  return theta[kOmega] + u_eval(spec, theta, x_prev) +
         c_eval(spec, theta, eps_prev) * sigma_delta_prev;
}

double vol_step_obs(const ModelSpec& spec, const Theta& theta, double sigma_delta_prev,
                    double ret_prev, double x_prev) {
  if (spec.family == Family::FGarch) {
    const double eps_prev = ret_prev / std::pow(sigma_delta_prev, 1.0 / spec.delta);
    return vol_step(spec, theta, sigma_delta_prev, eps_prev, x_prev);
  }
  return g_eval(spec, theta, ret_prev, VolInput::Return) + u_eval(spec, theta, x_prev) +
         theta[spec.beta_index()] * sigma_delta_prev;
}

CausalVolResult causal_volatility(const ModelSpec& spec, const Theta& theta,
                                  std::span<const double> eps_hist,
                                  std::span<const double> x_hist, std::size_t k_max,
                                  double tol) {
  if (k_max == 0) throw std::invalid_argument("causal_volatility: k_max must be positive");
  if (eps_hist.size() < k_max || x_hist.size() < k_max)
    throw std::invalid_argument("causal_volatility: histories shorter than k_max");
  if (tol < 0.0) throw std::invalid_argument("causal_volatility: tol must be non-negative");

  double sum = 0.0;
  double product = 1.0;  // prod_{j<k} c(eps[j])
  std::size_t k = 0;
  for (; k < k_max; ++k) {
    sum += product * (theta[kOmega] + u_eval(spec, theta, x_hist[k]));
    product *= c_eval(spec, theta, eps_hist[k]);
    if (product < tol) {
      ++k;
      break;
    }
  }
  return {sum, k};
}

}  // namespace garchx
