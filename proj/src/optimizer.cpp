#include "paleoarima/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace paleoarima {

namespace {

double guarded(const ObjectiveFn &f, std::span<const double> x) {
  const double v = f(x);
  return std::isfinite(v) ? v : 1e300;
}

} // namespace

OptimResult nelder_mead(const ObjectiveFn &f, std::span<const double> start,
                        const OptimOptions &options) {
  const std::size_t dim = start.size();
  OptimResult result;
  result.x.assign(start.begin(), start.end());
  if (dim == 0) {
    result.value = guarded(f, result.x);
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> simplex(dim + 1, result.x);
  for (std::size_t i = 0; i < dim; ++i) {
    double &coord = simplex[i + 1][i];
    coord += coord != 0.0 ? options.initial_step * std::fabs(coord)
                          : options.initial_step;
  }
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) {
    values[i] = guarded(f, simplex[i]);
  }

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), candidate(dim);
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return values[a] < values[b];
                     });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    const double spread = std::fabs(values[worst] - values[best]);
    if (spread <= options.rel_tol * (std::fabs(values[best]) + 1e-30)) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (double &c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coef) {
      for (std::size_t j = 0; j < dim; ++j) {
        candidate[j] = centroid[j] + coef * (simplex[worst][j] - centroid[j]);
      }
      return guarded(f, candidate);
    };

    const double reflected = blend(-1.0);
    if (reflected < values[best]) {
      const std::vector<double> reflected_point = candidate;
      const double expanded = blend(-2.0);
      if (expanded < reflected) {
        simplex[worst] = candidate;
        values[worst] = expanded;
      } else {
        simplex[worst] = reflected_point;
        values[worst] = reflected;
      }
    } else if (reflected < values[second_worst]) {
      simplex[worst] = candidate;
      values[worst] = reflected;
    } else {
      const double contracted =
          blend(reflected < values[worst] ? -0.5 : 0.5);
      if (contracted < std::min(reflected, values[worst])) {
        simplex[worst] = candidate;
        values[worst] = contracted;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < dim; ++j) {
            simplex[i][j] = simplex[best][j] +
                            0.5 * (simplex[i][j] - simplex[best][j]);
          }
          values[i] = guarded(f, simplex[i]);
        }
      }
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  result.value = *best_it;
  result.iterations = iter;
  return result;
}

std::vector<double> numerical_gradient(const ObjectiveFn &f,
                                       std::span<const double> x, double h) {
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = h * std::max(1.0, std::fabs(point[i]));
    const double saved = point[i];
    point[i] = saved + step;
    const double up = guarded(f, point);
    point[i] = saved - step;
    const double down = guarded(f, point);
    point[i] = saved;
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

std::vector<std::vector<double>> numerical_hessian(const ObjectiveFn &f,
                                                   std::span<const double> x,
                                                   double h) {
  const std::size_t dim = x.size();
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> steps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    steps[i] = h * std::max(1.0, std::fabs(point[i]));
  }
  const double f0 = guarded(f, point);
  std::vector<std::vector<double>> hess(dim, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    const double si = steps[i];
    const double saved_i = point[i];
    point[i] = saved_i + si;
    const double up = guarded(f, point);
    point[i] = saved_i - si;
    const double down = guarded(f, point);
    point[i] = saved_i;
    hess[i][i] = (up - 2.0 * f0 + down) / (si * si);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double sj = steps[j];
      const double saved_j = point[j];
      point[i] = saved_i + si;
      point[j] = saved_j + sj;
      const double pp = guarded(f, point);
      point[j] = saved_j - sj;
      const double pm = guarded(f, point);
      point[i] = saved_i - si;
      const double mm = guarded(f, point);
      point[j] = saved_j + sj;
      const double mp = guarded(f, point);
      point[i] = saved_i;
      point[j] = saved_j;
      hess[i][j] = hess[j][i] = (pp - pm - mp + mm) / (4.0 * si * sj);
    }
  }
  return hess;
}

bool invert_spd(std::vector<std::vector<double>> &m) {
  const std::size_t n = m.size();
  // Cholesky factorization m = L L^T.
  std::vector<std::vector<double>> chol(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = m[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= chol[i][k] * chol[j][k];
      if (i == j) {
        if (sum <= 0.0 || !std::isfinite(sum)) return false;
        chol[i][i] = std::sqrt(sum);
      } else {
        chol[i][j] = sum / chol[j][j];
      }
    }
  }
  // Invert L, then m^{ -1 } = L^{-T} L^{-1}.
  std::vector<std::vector<double>> inv_l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    inv_l[i][i] = 1.0 / chol[i][i];
    for (std::size_t j = 0; j < i; ++j) {
      double sum = 0.0;
      for (std::size_t k = j; k < i; ++k) sum -= chol[i][k] * inv_l[k][j];
      inv_l[i][j] = sum / chol[i][i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = 0.0;
      for (std::size_t k = i; k < n; ++k) sum += inv_l[k][i] * inv_l[k][j];
      m[i][j] = m[j][i] = sum;
    }
  }
  return true;
}

OptimResult bfgs(const ObjectiveFn &f, std::span<const double> start,
                 const OptimOptions &options) {
  const std::size_t dim = start.size();
  OptimResult result;
  result.x.assign(start.begin(), start.end());
  result.value = guarded(f, result.x);
  if (dim == 0) {
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> inv_hess(dim, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) inv_hess[i][i] = 1.0;
  std::vector<double> grad = numerical_gradient(f, result.x);

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    std::vector<double> direction(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        direction[i] -= inv_hess[i][j] * grad[j];
      }
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < dim; ++i) slope += direction[i] * grad[i];
    if (slope >= 0.0) {
      // Curvature update went bad; restart from steepest descent.
      for (std::size_t i = 0; i < dim; ++i) {
        std::fill(inv_hess[i].begin(), inv_hess[i].end(), 0.0);
        inv_hess[i][i] = 1.0;
        direction[i] = -grad[i];
      }
      slope = 0.0;
      for (std::size_t i = 0; i < dim; ++i) slope += direction[i] * grad[i];
      if (slope >= 0.0) {
        result.converged = true;  // gradient numerically zero
        break;
      }
    }

    double step = 1.0;
    std::vector<double> trial(dim);
    double trial_value = result.value;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < dim; ++i) {
        trial[i] = result.x[i] + step * direction[i];
      }
      trial_value = guarded(f, trial);
      if (trial_value <= result.value + 1e-4 * step * slope) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      result.converged = true;  // no descent possible at line-search scale
      break;
    }

    std::vector<double> new_grad = numerical_gradient(f, trial);
    std::vector<double> s(dim), ydiff(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = trial[i] - result.x[i];
      ydiff[i] = new_grad[i] - grad[i];
    }
    double sy = 0.0;
    for (std::size_t i = 0; i < dim; ++i) sy += s[i] * ydiff[i];
    if (sy > 1e-12) {
      // BFGS inverse update.
      std::vector<double> hy(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          hy[i] += inv_hess[i][j] * ydiff[j];
        }
      }
      double yhy = 0.0;
      for (std::size_t i = 0; i < dim; ++i) yhy += ydiff[i] * hy[i];
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          inv_hess[i][j] += (sy + yhy) * s[i] * s[j] / (sy * sy) -
                            (hy[i] * s[j] + s[i] * hy[j]) / sy;
        }
      }
    }

    const double previous = result.value;
    result.x = trial;
    result.value = trial_value;
    grad = std::move(new_grad);

    if (std::fabs(previous - result.value) <=
        options.rel_tol * (std::fabs(previous) + 1e-30)) {
      result.converged = true;
      ++iter;
      break;
    }
  }
  result.iterations = iter;
  return result;
}

} // namespace paleoarima
