#include "core/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace garchx {

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

void project(std::vector<double>& x, const std::vector<double>& lo,
             const std::vector<double>& hi) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = clamp(x[i], lo[i], hi[i]);
}

// Infinity norm of x - P(x - g), the standard box-convergence measure.
double projected_gradient_norm(const std::vector<double>& x, const std::vector<double>& g,
                               const std::vector<double>& lo, const std::vector<double>& hi) {
  double norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    norm = std::max(norm, std::fabs(x[i] - clamp(x[i] - g[i], lo[i], hi[i])));
  return norm;
}

void check_box(const std::vector<double>& x0, const std::vector<double>& lo,
               const std::vector<double>& hi) {
  if (x0.size() != lo.size() || x0.size() != hi.size() || x0.empty())
    throw std::invalid_argument("optimizer: inconsistent box dimensions");
  for (std::size_t i = 0; i < x0.size(); ++i)
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("optimizer: empty box");
}

}  // namespace

BoxOptimResult minimize_projected_bfgs(const ObjectiveWithGrad& f, std::vector<double> x0,
                                       const std::vector<double>& lower,
                                       const std::vector<double>& upper,
                                       const BoxOptimOptions& options) {
  check_box(x0, lower, upper);
  const std::size_t m = x0.size();
  project(x0, lower, upper);

  std::vector<double> x = x0;
  std::vector<double> grad(m), grad_new(m);
  double fx = f(x, grad);
  if (!std::isfinite(fx)) throw std::invalid_argument("optimizer: objective not finite at start");

  // Inverse Hessian estimate, reset to scaled identity on active-set changes.
  std::vector<std::vector<double>> H(m, std::vector<double>(m, 0.0));
  auto reset_h = [&](double scale) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) H[i][j] = (i == j) ? scale : 0.0;
  };
  reset_h(1.0);

  auto active_set = [&](const std::vector<double>& xx, const std::vector<double>& gg) {
    std::vector<bool> active(m);
    const double eps = 1e-12;
    for (std::size_t i = 0; i < m; ++i)
      active[i] = (xx[i] <= lower[i] + eps && gg[i] > 0.0) ||
                  (xx[i] >= upper[i] - eps && gg[i] < 0.0);
    return active;
  };

  std::vector<bool> active = active_set(x, grad);
  BoxOptimResult result;
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    result.grad_norm = projected_gradient_norm(x, grad, lower, upper);
    if (result.grad_norm < options.grad_tol) {
      result.converged = true;
      break;
    }

    // Search direction on the free subspace.
    std::vector<double> d(m, 0.0);
    double descent = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (active[i]) continue;
      double di = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        if (!active[j]) di -= H[i][j] * grad[j];
      d[i] = di;
      descent += di * grad[i];
    }
    if (descent >= 0.0) {
      // Not a descent direction (stale curvature); fall back to steepest.
      descent = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        d[i] = active[i] ? 0.0 : -grad[i];
        descent += d[i] * grad[i];
      }
      reset_h(1.0);
      if (descent >= 0.0) {
        result.converged = result.grad_norm < options.grad_tol;
        break;
      }
    }

    // Backtracking Armijo line search on the projected path.
    double step = options.initial_step;
    double f_trial = std::numeric_limits<double>::infinity();
    std::vector<double> x_trial(m);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < m; ++i) x_trial[i] = x[i] + step * d[i];
      project(x_trial, lower, upper);
      f_trial = f(x_trial, grad_new);
      if (std::isfinite(f_trial) && f_trial <= fx + 1e-4 * step * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.converged = result.grad_norm < options.grad_tol;
      break;
    }

    // BFGS update on the accepted move.
    std::vector<double> s(m), y(m);
    double sy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      s[i] = x_trial[i] - x[i];
      y[i] = grad_new[i] - grad[i];
      sy += s[i] * y[i];
    }
    const std::vector<bool> active_new = active_set(x_trial, grad_new);
    if (active_new != active) {
      double yy = 0.0;
      for (std::size_t i = 0; i < m; ++i) yy += y[i] * y[i];
      reset_h(sy > 0.0 && yy > 0.0 ? sy / yy : 1.0);
    } else if (sy > 1e-12) {
      std::vector<double> hy(m, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) hy[i] += H[i][j] * y[j];
      double yhy = 0.0;
      for (std::size_t i = 0; i < m; ++i) yhy += y[i] * hy[i];
      const double c1 = (sy + yhy) / (sy * sy);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          H[i][j] += c1 * s[i] * s[j] - (hy[i] * s[j] + s[i] * hy[j]) / sy;
    }

    x = x_trial;
    fx = f_trial;
    grad = grad_new;
    active = active_new;
  }

  result.x = std::move(x);
  result.f = fx;
  result.iterations = iter;
  if (!result.converged)
    result.grad_norm = projected_gradient_norm(result.x, grad, lower, upper);
  return result;
}

BoxOptimResult minimize_nelder_mead_box(const Objective& f, std::vector<double> x0,
                                        const std::vector<double>& lower,
                                        const std::vector<double>& upper,
                                        const BoxOptimOptions& options) {
  check_box(x0, lower, upper);
  const std::size_t m = x0.size();
  project(x0, lower, upper);

  auto eval = [&](std::vector<double> p) {
    project(p, lower, upper);
    const double v = f(p);
    return std::pair<std::vector<double>, double>(std::move(p),
                                                  std::isfinite(v) ? v : 1e308);
  };

  // Initial simplex: x0 plus per-coordinate nudges scaled to the box.
  std::vector<std::pair<std::vector<double>, double>> simplex;
  simplex.push_back(eval(x0));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> p = x0;
    const double span = upper[i] - lower[i];
    double h = span > 0.0 ? 0.05 * span : 0.0;
    if (h == 0.0) h = 1e-8;
    p[i] = (p[i] + h <= upper[i]) ? p[i] + h : p[i] - h;
    simplex.push_back(eval(p));
  }

  auto by_value = [](const auto& a, const auto& b) { return a.second < b.second; };
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double spread = simplex.back().second - simplex.front().second;
    if (spread < options.f_tol * (std::fabs(simplex.front().second) + 1.0)) break;

    std::vector<double> centroid(m, 0.0);
    for (std::size_t k = 0; k + 1 < simplex.size(); ++k)
      for (std::size_t i = 0; i < m; ++i) centroid[i] += simplex[k].first[i];
    for (double& c : centroid) c /= static_cast<double>(m);

    auto point_along = [&](double coeff) {
      std::vector<double> p(m);
      for (std::size_t i = 0; i < m; ++i)
        p[i] = centroid[i] + coeff * (centroid[i] - simplex.back().first[i]);
      return eval(std::move(p));
    };

    auto reflected = point_along(1.0);
    if (reflected.second < simplex.front().second) {
      auto expanded = point_along(2.0);
      simplex.back() = expanded.second < reflected.second ? expanded : reflected;
    } else if (reflected.second < simplex[simplex.size() - 2].second) {
      simplex.back() = reflected;
    } else {
      auto contracted = point_along(-0.5);
      if (contracted.second < simplex.back().second) {
        simplex.back() = contracted;
      } else {
        for (std::size_t k = 1; k < simplex.size(); ++k) {
          std::vector<double> p(m);
          for (std::size_t i = 0; i < m; ++i)
            p[i] = 0.5 * (simplex[k].first[i] + simplex.front().first[i]);
          simplex[k] = eval(std::move(p));
        }
      }
    }
  }

  std::sort(simplex.begin(), simplex.end(), by_value);
  BoxOptimResult result;
  result.x = simplex.front().first;
  result.f = simplex.front().second;
  result.iterations = iter;
  result.grad_norm = simplex.back().second - simplex.front().second;
  result.converged = iter < options.max_iter;
  return result;
}

}  // namespace garchx
