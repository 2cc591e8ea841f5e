#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace garchx {

/// GARCHX(1,1) volatility recursion:
///
///   R_t = sigma_t * eps_t
///   sigma_t^delta = g(eps_{t-1}) + lambda * u1(x_{t-1}) + c(eps_{t-1}) * sigma_{t-1}^delta
///
/// The family selects g and c; the exogenous transform u1 and the exponent
/// delta complete the specification. The coefficient lambda lives in Theta.
enum class Family { StandardGarch, GjrGarch, TGarch, ApArch, FGarch };

enum class UTransform { Abs, SqrtAbs, Square, PowerAbs };

/// Which variable drives the one-step recursion:
///  - Shock: the literal model equation, driven by the lagged innovation.
///  - Return: the equivalent rewriting driven by the lagged observed return
///    (the ARCH term folds into g since R = sigma * eps); this is the form
///    used by the likelihood, where innovations are not observed.
enum class VolInput { Shock, Return };

struct ModelSpec {
  Family family = Family::StandardGarch;
  double delta = 2.0;
  UTransform u_transform = UTransform::Abs;
  double power_p = 1.0;      ///< exponent for UTransform::PowerAbs
  double fgarch_gamma = 1.0; ///< inner exponent of the FGarch c-function (>= 1)

  std::size_t param_count() const;
  std::vector<std::string> param_names() const;
  std::size_t beta_index() const;

  /// Throws std::invalid_argument on an inconsistent specification
  /// (delta must equal 2 for StandardGarch/GjrGarch and 1 for TGarch).
  void validate() const;

  static ModelSpec standard_garch(UTransform u = UTransform::Abs);
  static ModelSpec gjr_garch(UTransform u = UTransform::Abs);
  static ModelSpec tgarch(UTransform u = UTransform::Abs);
  static ModelSpec aparch(double delta, UTransform u = UTransform::Abs);
  static ModelSpec fgarch(double delta, double gamma, UTransform u = UTransform::Abs);
};

/// A point in the parameter box: coordinate values plus per-coordinate
/// lower/upper bounds, ordered as ModelSpec::param_names().
struct Theta {
  std::vector<double> values;
  std::vector<double> lower;
  std::vector<double> upper;

  double operator[](std::size_t i) const { return values[i]; }

  /// Box and family constraints:
  ///   lower <= values <= upper, lower[omega] > 0, lambda >= 0,
  ///   beta1 in [0,1), ARCH coefficients >= 0 (strictly positive lower
  ///   bound for ApArch/FGarch), |eta1| < 1 for ApArch/FGarch.
  void validate(const ModelSpec& spec) const;
};

/// g(.) of the volatility equation. With VolInput::Shock this is the model's
/// own g (= omega for every family here); with VolInput::Return the ARCH
/// term is folded in and evaluated at the lagged return, e.g. for ApArch
/// g(R) = omega + alpha1 * (|R| - eta1 * R)^delta.
double g_eval(const ModelSpec& spec, const Theta& theta, double eps_or_ret,
              VolInput input = VolInput::Shock);

/// c(.) of the volatility equation, evaluated at an innovation value.
/// Non-negative for every in-box theta.
double c_eval(const ModelSpec& spec, const Theta& theta, double eps);

/// u(x) = lambda * u1(x). Non-negative.
double u_eval(const ModelSpec& spec, const Theta& theta, double x);

/// The covariate transform u1 alone.
double u1_eval(const ModelSpec& spec, double x);

/// One step of the volatility recursion driven by the lagged innovation.
double vol_step(const ModelSpec& spec, const Theta& theta, double sigma_delta_prev,
                double eps_prev, double x_prev);

/// One step driven by the lagged observed return (algebraically identical to
/// vol_step with eps_prev = ret_prev / sigma_prev).
double vol_step_obs(const ModelSpec& spec, const Theta& theta, double sigma_delta_prev,
                    double ret_prev, double x_prev);

struct CausalVolResult {
  double value = 0.0;
  std::size_t terms_used = 0;  ///< number of series terms summed (k = 0..terms_used-1)
};

/// Truncated causal series for sigma_t^delta:
///   sum_k ( prod_{j<k} c(eps[j]) ) * ( g(eps[k]) + u(x[k]) )
/// with histories indexed newest-first. Terms stop at k_max or once the
/// running c-product drops below tol.
CausalVolResult causal_volatility(const ModelSpec& spec, const Theta& theta,
                                  std::span<const double> eps_hist,
                                  std::span<const double> x_hist, std::size_t k_max,
                                  double tol);

}  // namespace garchx
