#include "doctest.h"

#include <cmath>
#include <vector>

#include "paleoarima/optimizer.hpp"

using namespace paleoarima;

namespace {

double rosenbrock(std::span<const double> x) {
  const double a = 1.0 - x[0];
  const double b = x[1] - x[0] * x[0];
  return a * a + 100.0 * b * b;
}

double shifted_quadratic(std::span<const double> x) {
  // minimum 3.5 at (2, -1, 0.5), anisotropic curvature
  const double u = x[0] - 2.0;
  const double v = x[1] + 1.0;
  const double w = x[2] - 0.5;
  return 3.5 + 4.0 * u * u + 0.5 * v * v + 9.0 * w * w + u * v;
}

} // namespace

TEST_CASE("nelder_mead minimizes a shifted quadratic") {
  std::vector<double> start{0.0, 0.0, 0.0};
  OptimOptions options;
  options.max_iterations = 2000;
  const auto result = nelder_mead(shifted_quadratic, start, options);
  CHECK(result.converged);
  CHECK(result.x[0] == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(result.x[1] == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(result.x[2] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(result.value == doctest::Approx(3.5).epsilon(1e-8));
}

TEST_CASE("bfgs solves Rosenbrock from the standard start") {
  std::vector<double> start{-1.2, 1.0};
  OptimOptions options;
  options.max_iterations = 5000;
  const auto result = bfgs(rosenbrock, start, options);
  CHECK(result.converged);
  CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(result.x[1] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(result.value < 1e-8);
}

TEST_CASE("nelder_mead then bfgs polish reaches tight accuracy") {
  std::vector<double> start{-1.2, 1.0};
  OptimOptions options;
  options.max_iterations = 3000;
  const auto rough = nelder_mead(rosenbrock, start, options);
  const auto polished = bfgs(rosenbrock, rough.x, options);
  CHECK(polished.value <= rough.value + 1e-15);
  CHECK(polished.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(polished.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("iteration cap reports non-convergence") {
  std::vector<double> start{-1.2, 1.0};
  OptimOptions options;
  options.max_iterations = 3;
  const auto nm = nelder_mead(rosenbrock, start, options);
  CHECK_FALSE(nm.converged);
  CHECK(nm.iterations <= 3);
  const auto bf = bfgs(rosenbrock, start, options);
  CHECK_FALSE(bf.converged);
}

TEST_CASE("numerical_gradient matches an analytic gradient") {
  const ObjectiveFn f = [](std::span<const double> x) {
    return std::sin(x[0]) * std::exp(x[1]) + x[0] * x[0] * x[1];
  };
  const std::vector<double> x{0.7, -0.3};
  const auto g = numerical_gradient(f, x);
  const double gx = std::cos(0.7) * std::exp(-0.3) + 2.0 * 0.7 * (-0.3);
  const double gy = std::sin(0.7) * std::exp(-0.3) + 0.7 * 0.7;
  CHECK(g[0] == doctest::Approx(gx).epsilon(1e-7));
  CHECK(g[1] == doctest::Approx(gy).epsilon(1e-7));
}

TEST_CASE("numerical_hessian is exact on quadratics and symmetric") {
  const ObjectiveFn f = [](std::span<const double> x) {
    return 2.0 * x[0] * x[0] + 3.0 * x[0] * x[1] + 5.0 * x[1] * x[1] -
           x[0] + 4.0;
  };
  const std::vector<double> x{1.3, -2.1};
  const auto h = numerical_hessian(f, x);
  REQUIRE(h.size() == 2);
  CHECK(h[0][0] == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(h[0][1] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(h[1][0] == doctest::Approx(h[0][1]).epsilon(1e-12));
  CHECK(h[1][1] == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("invert_spd produces the known inverse") {
  // m = [[4, 2], [2, 3]], det = 8, inverse = [[3, -2], [-2, 4]] / 8.
  std::vector<std::vector<double>> m{{4.0, 2.0}, {2.0, 3.0}};
  REQUIRE(invert_spd(m));
  CHECK(m[0][0] == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
  CHECK(m[0][1] == doctest::Approx(-2.0 / 8.0).epsilon(1e-12));
  CHECK(m[1][0] == doctest::Approx(-2.0 / 8.0).epsilon(1e-12));
  CHECK(m[1][1] == doctest::Approx(4.0 / 8.0).epsilon(1e-12));

  SUBCASE("3x3 inverse verified by multiplication") {
    std::vector<std::vector<double>> a{{6.0, 2.0, 1.0},
                                       {2.0, 5.0, 2.0},
                                       {1.0, 2.0, 4.0}};
    auto inv = a;
    REQUIRE(invert_spd(inv));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += a[i][k] * inv[k][j];
        CHECK(acc == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("invert_spd rejects indefinite matrices") {
  std::vector<std::vector<double>> m{{1.0, 2.0}, {2.0, 1.0}};
  CHECK_FALSE(invert_spd(m));
  std::vector<std::vector<double>> z{{0.0, 0.0}, {0.0, 0.0}};
  CHECK_FALSE(invert_spd(z));
}
