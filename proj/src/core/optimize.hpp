#pragma once

#include <functional>
#include <vector>

namespace garchx {

struct BoxOptimOptions {
  int max_iter = 500;
  double grad_tol = 1e-7;   ///< infinity norm of the projected gradient
  double f_tol = 1e-12;     ///< simplex f-spread tolerance (Nelder-Mead)
  double initial_step = 1.0;
};

struct BoxOptimResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;   ///< projected-gradient infinity norm at the end
};

using ObjectiveWithGrad =
    std::function<double(const std::vector<double>&, std::vector<double>&)>;
using Objective = std::function<double(const std::vector<double>&)>;

/// Minimizes f over the box [lower, upper] by projected quasi-Newton:
/// BFGS on the free coordinates, gradient-projection steps when the active
/// set changes, Armijo backtracking line search. The gradient callback fills
/// its second argument.
BoxOptimResult minimize_projected_bfgs(const ObjectiveWithGrad& f, std::vector<double> x0,
                                       const std::vector<double>& lower,
                                       const std::vector<double>& upper,
                                       const BoxOptimOptions& options = {});

/// Derivative-free Nelder-Mead with candidate points projected onto the box.
/// grad_norm is reported as the final simplex f-spread.
BoxOptimResult minimize_nelder_mead_box(const Objective& f, std::vector<double> x0,
                                        const std::vector<double>& lower,
                                        const std::vector<double>& upper,
                                        const BoxOptimOptions& options = {});

}  // namespace garchx
