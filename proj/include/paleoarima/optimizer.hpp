#pragma once

#include <functional>
#include <span>
#include <vector>

namespace paleoarima {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimOptions {
  int max_iterations = 500;
  double rel_tol = 1e-10;
  double initial_step = 0.1;
};

/// Derivative-free Nelder-Mead simplex. Converges when the relative spread
/// of the simplex objective values drops below rel_tol.
OptimResult nelder_mead(const ObjectiveFn &f, std::span<const double> start,
                        const OptimOptions &options = {});

/// BFGS with central-difference gradients and Armijo backtracking.
/// Converges on relative objective change <= rel_tol.
OptimResult bfgs(const ObjectiveFn &f, std::span<const double> start,
                 const OptimOptions &options = {});

/// Central-difference gradient, step h * max(1, |x_i|).
std::vector<double> numerical_gradient(const ObjectiveFn &f,
                                       std::span<const double> x,
                                       double h = 1e-6);

/// Central-difference Hessian (full second differences), symmetric.
std::vector<std::vector<double>> numerical_hessian(const ObjectiveFn &f,
                                                   std::span<const double> x,
                                                   double h = 1e-4);

/// Invert a symmetric positive-definite matrix in place via Cholesky.
/// Returns false when the matrix is not positive-definite.
bool invert_spd(std::vector<std::vector<double>> &m);

} // namespace paleoarima
