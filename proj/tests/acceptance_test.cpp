// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria. Run via ctest or directly from the build directory.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "paleoarima/correlogram.hpp"
#include "paleoarima/diagnostics.hpp"
#include "paleoarima/estimation.hpp"
#include "paleoarima/forecast.hpp"
#include "paleoarima/ingest.hpp"
#include "paleoarima/report_io.hpp"
#include "paleoarima/scenario.hpp"
#include "paleoarima/simulate.hpp"
#include "paleoarima/special_functions.hpp"
#include "paleoarima/time_series.hpp"

#ifndef DATA_PATH
#error "DATA_PATH must point at the bundled data directory"
#endif
#ifndef CLI_PATH
#error "CLI_PATH must point at the command-line binary"
#endif
#ifndef GOLDEN_PATH
#error "GOLDEN_PATH must point at the golden file directory"
#endif

namespace fs = std::filesystem;
using namespace paleoarima;

namespace {

int g_failures = 0;

void report(int index, const std::string &name, bool ok,
            const std::string &detail) {
  std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  if (!ok) ++g_failures;
}

bool within(double x, double target, double tol) {
  return std::isfinite(x) && std::fabs(x - target) <= tol;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &tag) {
    path = fs::temp_directory_path() /
           ("paleoarima_acc_" + std::to_string(::getpid()) + "_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::string &args) {
  const std::string command =
      std::string(CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return status < 0 ? -1 : WEXITSTATUS(status);
}

// Direct Yule-Walker PACF: solve the order-k system by Gaussian elimination.
std::vector<double> pacf_direct(const std::vector<double> &rho) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= rho.size(); ++k) {
    std::vector<std::vector<double>> a(k, std::vector<double>(k));
    std::vector<double> b(k);
    for (std::size_t i = 0; i < k; ++i) {
      b[i] = rho[i];
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t lag = i > j ? i - j : j - i;
        a[i][j] = lag == 0 ? 1.0 : rho[lag - 1];
      }
    }
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < k; ++r)
        if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
      for (std::size_t r = col + 1; r < k; ++r) {
        const double f = a[r][col] / a[col][col];
        for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
        b[r] -= f * b[col];
      }
    }
    std::vector<double> phi(k);
    for (int r = static_cast<int>(k) - 1; r >= 0; --r) {
      double acc = b[static_cast<std::size_t>(r)];
      for (std::size_t c = static_cast<std::size_t>(r) + 1; c < k; ++c)
        acc -= a[static_cast<std::size_t>(r)][c] * phi[c];
      phi[static_cast<std::size_t>(r)] =
          acc / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
    }
    out.push_back(phi.back());
  }
  return out;
}

void criterion_1(const EnsembleTable &table) {
  const TimeSeries median = to_series(table, PercentileColumn::median);
  const auto report_rows = build_correlogram(median, 16);
  const auto &rows = report_rows.rows;
  std::string detail;
  bool ok = rows.size() == 16;
  if (ok) {
    ok = within(rows[0].acf, 0.956, 0.005) && ok;
    detail += "acf1=" + num(rows[0].acf);
    ok = within(rows[0].se_white_noise, 0.090, 0.001) && ok;
    ok = within(rows[1].se_white_noise, 0.089, 0.001) && ok;
    ok = within(rows[15].se_white_noise, 0.084, 0.001) && ok;
    detail += " se(1,2,16)=" + num(rows[0].se_white_noise) + "," +
              num(rows[1].se_white_noise) + "," + num(rows[15].se_white_noise);
    ok = within(rows[0].q_stat, 113.376, 1.0) && ok;
    ok = within(rows[15].q_stat, 723.810, 5.0) && ok;
    detail += " Q1=" + num(rows[0].q_stat) + " Q16=" + num(rows[15].q_stat);
    double max_p = 0.0;
    for (const auto &row : rows) max_p = std::max(max_p, row.p_value);
    ok = (max_p < 0.001) && ok;
    detail += " maxSig=" + num(max_p);
  } else {
    detail = "correlogram did not produce 16 rows";
  }
  report(1, "correlogram reproduction", ok, detail);
}

void criterion_2(const ScenarioReport &scenario) {
  const auto &fit = scenario.series[0].fit;
  bool ok = scenario.series[0].converged;
  std::string detail;
  if (ok) {
    const double constant = fit.constant_mean;
    const double ar = fit.ar[0];
    const double ma = fit.reported_ma()[0];
    ok = within(constant, 0.191, 0.05) && ok;
    ok = within(ar, 0.932, 0.03) && ok;
    ok = within(ma, -0.266, 0.08) && ok;
    ok = fit.se_available && ok;
    if (fit.se_available) {
      ok = (fit.p_value[0] > 0.05) && ok;
      ok = (fit.p_value[1] < 0.001) && ok;
      ok = (fit.p_value[2] < 0.02) && ok;
      ok = (fit.t_stat[1] > 0.0) && (fit.t_stat[2] < 0.0) && ok;
    }
    detail = "const=" + num(constant) + " ar=" + num(ar) + " ma=" + num(ma);
    if (fit.se_available)
      detail += " p=(" + num(fit.p_value[0]) + "," + num(fit.p_value[1]) +
                "," + num(fit.p_value[2]) + ")";
  } else {
    detail = "median fit did not converge";
  }
  report(2, "median-series fit reproduction", ok, detail);
}

void criterion_3(const ScenarioReport &scenario) {
  const auto &p5 = scenario.series[1];
  const auto &p95 = scenario.series[2];
  bool ok = p5.converged && p95.converged;
  std::string detail;
  if (ok) {
    const double ar5 = p5.fit.ar[0];
    const double ma5 = p5.fit.reported_ma()[0];
    const double ar95 = p95.fit.ar[0];
    const double ma95 = p95.fit.reported_ma()[0];
    ok = within(ar5, 0.999, 0.005) && ok;
    ok = within(ma5, -0.700, 0.08) && ok;
    ok = within(ar95, 0.996, 0.005) && ok;
    ok = within(ma95, -0.382, 0.08) && ok;
    detail = "p5: ar=" + num(ar5) + " ma=" + num(ma5) +
             "; p95: ar=" + num(ar95) + " ma=" + num(ma95);
  } else {
    detail = "a percentile fit did not converge";
  }
  report(3, "percentile fits reproduction", ok, detail);
}

void criterion_4(const ScenarioReport &scenario) {
  bool ok = within(scenario.estimates_median, 0.333, 0.05);
  std::string detail = "recomputed median=" + num(scenario.estimates_median);
  const std::vector<double> printed{0.932, -0.266, 0.999,
                                    -0.700, 0.996, -0.382};
  const double exact = percentile(printed, 50.0);
  ok = (std::fabs(exact - 0.333) <= 1e-12) && ok;
  detail += " printed-six median=" + num(exact);
  report(4, "scenario headline", ok, detail);
}

void criterion_5(const ScenarioReport &scenario) {
  bool ok = scenario.series[0].converged;
  std::string detail;
  if (ok) {
    const auto diag = diagnose(scenario.series[0].fit);
    ok = diag.white_noise_pass;
    detail = "white_noise_pass=" + std::string(ok ? "true" : "false");
    for (const auto &[lag, p] : diag.lb_p_at)
      detail += " p(" + std::to_string(lag) + ")=" + num(p);
  } else {
    detail = "median fit did not converge";
  }
  report(5, "residual whiteness", ok, detail);
}

void criterion_6() {
  const double p1 = t_significance(1.489, 118);
  const double p2 = t_significance(-2.695, 118);
  const double p3 = t_significance(28.799, 118);
  const bool ok =
      within(p1, 0.139, 0.002) && within(p2, 0.008, 0.001) && (p3 < 1e-10);
  report(6, "t p-value table checks", ok,
         "p(1.489)=" + num(p1) + " p(-2.695)=" + num(p2) +
             " p(28.799)=" + num(p3));
}

void criterion_7() {
  // Simulate-and-recover battery over 100 fixed seeds.
  double abs_error_sum = 0.0;
  int fitted = 0;
  FitOptions options;
  options.compute_se = false;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SimSpec sim;
    sim.ar = {0.9};
    sim.ma = {0.3};
    sim.sigma = 1.0;
    sim.n = 2000;
    sim.seed = seed;
    const TimeSeries y = simulate_arma(sim);
    const auto f = fit(y, ArimaSpec{1, 0, 1, false}, options);
    if (!f.converged) continue;
    ++fitted;
    abs_error_sum += 0.5 * (std::fabs(f.ar[0] - 0.9) +
                            std::fabs(f.ma[0] - 0.3));
  }
  const double mean_error = fitted > 0 ? abs_error_sum / fitted : 1e9;
  bool ok = fitted >= 98 && mean_error <= 0.05;
  std::string detail = "recover: fits=" + std::to_string(fitted) +
                       " mean_abs_err=" + num(mean_error);

  // AR-only CSS equals lagged OLS.
  SimSpec sim;
  sim.ar = {0.6};
  sim.constant = 1.0;
  sim.sigma = 1.0;
  sim.n = 800;
  sim.seed = 424242;
  const TimeSeries y = simulate_arma(sim);
  const auto f = fit(y, ArimaSpec{1, 0, 0, false});
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t t = 1; t < y.values.size(); ++t) {
    sxy += y.values[t - 1] * y.values[t];
    sxx += y.values[t - 1] * y.values[t - 1];
  }
  const double ols = sxy / sxx;
  const double ols_gap = std::fabs(f.ar[0] - ols);
  ok = (f.converged && ols_gap <= 1e-6) && ok;
  detail += " css_vs_ols=" + num(ols_gap);

  // Durbin-Levinson PACF equals direct Yule-Walker solves.
  double pacf_gap = 0.0;
  for (std::uint64_t seed = 7; seed < 12; ++seed) {
    SimSpec s2;
    s2.ar = {0.5};
    s2.ma = {0.4};
    s2.sigma = 1.0;
    s2.n = 500;
    s2.seed = seed;
    const TimeSeries path = simulate_arma(s2);
    const auto rho = acf(path, 12);
    const auto dl = pacf_from_acf(rho);
    const auto direct = pacf_direct(rho);
    for (std::size_t i = 0; i < direct.size(); ++i)
      pacf_gap = std::max(pacf_gap, std::fabs(dl.values[i] - direct[i]));
  }
  ok = (pacf_gap <= 1e-8) && ok;
  detail += " dl_vs_yw=" + num(pacf_gap);
  report(7, "oracle equivalence", ok, detail);
}

void criterion_8() {
  // AR(1) closed-form forecasts.
  SimSpec sim;
  sim.ar = {0.85};
  sim.constant = 2.0;
  sim.sigma = 1.0;
  sim.n = 500;
  sim.seed = 9001;
  const TimeSeries y = simulate_arma(sim);
  const auto f = fit(y, ArimaSpec{1, 0, 0, true});
  const auto fc = forecast(f, 50, 0.95);
  double point_gap = 0.0;
  const double a = f.ar[0];
  const double mu = f.constant_mean;
  const double last = y.values.back();
  for (int h = 1; h <= 50; ++h) {
    const double closed = mu + std::pow(a, h) * (last - mu);
    point_gap = std::max(
        point_gap, std::fabs(fc.points[static_cast<std::size_t>(h - 1)] -
                             closed));
  }
  bool ok = f.converged && point_gap <= 1e-10;
  std::string detail = "ar1_forecast_gap=" + num(point_gap);

  // One-step variance is the innovation variance.
  const auto one = forecast(f, 1, 0.95);
  const double zq = special::normal_quantile(0.975);
  const double var1 = (one.ucl[0] - one.points[0]) *
                      (one.ucl[0] - one.points[0]) / (zq * zq);
  const double var_gap = std::fabs(var1 - f.sigma2);
  ok = (var_gap <= 1e-10 * std::max(1.0, f.sigma2)) && ok;
  detail += " h1_var_gap=" + num(var_gap);

  // Difference / integrate round trip.
  double rt_gap = 0.0;
  SplitMix64 rng(77);
  std::vector<double> walk;
  double acc = 5.0;
  for (int i = 0; i < 300; ++i) {
    acc += rng.next_gaussian();
    walk.push_back(acc);
  }
  const TimeSeries original = make_series(walk);
  for (int d = 1; d <= 2; ++d) {
    const auto diffed = difference(original, d);
    const TimeSeries back = integrate(diffed);
    for (std::size_t i = 0; i < walk.size(); ++i)
      rt_gap = std::max(rt_gap,
                        std::fabs(back.values[i] - original.values[i]));
  }
  ok = (rt_gap <= 1e-12) && ok;
  detail += " roundtrip_gap=" + num(rt_gap);
  report(8, "forecast correctness", ok, detail);
}

void criterion_9(const EnsembleTable &table, const std::string &data_file) {
  bool ok = true;
  std::string detail;
  try {
    // Two consecutive CLI scenario runs must be byte-identical.
    TempDir run1("s1");
    TempDir run2("s2");
    const std::string base = "scenario -i " + data_file + " -o ";
    ok = (run_cli(base + run1.path.string()) == 0) && ok;
    ok = (run_cli(base + run2.path.string()) == 0) && ok;
    const char *names[] = {"scenario.json", "six_estimates.csv",
                           "forecast_median.csv", "forecast_p5.csv",
                           "forecast_p95.csv"};
    bool identical = true;
    for (const char *name : names)
      identical = identical &&
                  slurp(run1.path / name) == slurp(run2.path / name);
    ok = identical && ok;
    detail += std::string("rerun_identical=") + (identical ? "true" : "false");

    // Library-level thread-count invariance via the model grid.
    const TimeSeries median = to_series(table, PercentileColumn::median);
    GridOptions serial;
    serial.n_threads = 1;
    GridOptions parallel;
    parallel.n_threads = 4;
    const auto ga = grid_search(median, 2, 1, 2, serial);
    const auto gb = grid_search(median, 2, 1, 2, parallel);
    const bool grid_same =
        grid_csv(ga) == grid_csv(gb) && grid_json(ga) == grid_json(gb);
    ok = grid_same && ok;
    detail += std::string(" grid_thread_invariant=") +
              (grid_same ? "true" : "false");

    // Byte-stable against the committed golden outputs.
    TempDir simdir("sim");
    ok = (run_cli("simulate --length 121 --seed 42 --ar 0.85 --ma 0.25 "
                  "--sigma 0.12 -o " +
                  simdir.path.string()) == 0) &&
         ok;
    const bool sim_match =
        slurp(simdir.path / "simulated.csv") ==
        slurp(fs::path(GOLDEN_PATH) / "simulated_seed42.csv");
    ok = sim_match && ok;
    detail += std::string(" sim_golden=") + (sim_match ? "true" : "false");
    const bool six_match =
        slurp(run1.path / "six_estimates.csv") ==
        slurp(fs::path(GOLDEN_PATH) / "six_estimates.csv");
    ok = six_match && ok;
    detail += std::string(" six_golden=") + (six_match ? "true" : "false");
  } catch (const std::exception &e) {
    ok = false;
    detail += std::string(" error: ") + e.what();
  }
  report(9, "determinism", ok, detail);
}

} // namespace

int main() {
  const std::string data_file =
      std::string(DATA_PATH) + "/temp12k_percentiles.csv";
  EnsembleTable table;
  try {
    table = parse_percentiles_file(data_file);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "cannot load %s: %s\n", data_file.c_str(), e.what());
    return 9;
  }

  ScenarioReport scenario;
  bool scenario_ok = false;
  try {
    scenario = run_scenario(table);
    scenario_ok = scenario.series.size() == 3;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "scenario run failed: %s\n", e.what());
  }

  criterion_1(table);
  if (scenario_ok) {
    criterion_2(scenario);
    criterion_3(scenario);
    criterion_4(scenario);
    criterion_5(scenario);
  } else {
    report(2, "median-series fit reproduction", false, "scenario run failed");
    report(3, "percentile fits reproduction", false, "scenario run failed");
    report(4, "scenario headline", false, "scenario run failed");
    report(5, "residual whiteness", false, "scenario run failed");
  }
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(table, data_file);

  if (g_failures == 0)
    std::printf("all 9 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria failed\n", g_failures);
  return g_failures;
}
