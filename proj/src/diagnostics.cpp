#include "paleoarima/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

#include "paleoarima/errors.hpp"
#include "paleoarima/special_functions.hpp"

namespace paleoarima {

namespace {

constexpr int kCheckedLags[] = {6, 12, 18};

std::vector<double> innovation_series(const ArimaFit &fit) {
  // The first p residual slots are pre-sample zeros, not innovations.
  return {fit.residuals.begin() + fit.spec.p, fit.residuals.end()};
}

} // namespace

DiagnosticReport diagnose(const ArimaFit &fit, int max_lag,
                          double p_threshold) {
  std::vector<double> res = innovation_series(fit);
  const int n = static_cast<int>(res.size());
  if (max_lag <= 0) max_lag = default_max_lag(n);
  if (n < 8 || n < max_lag + 2)
    throw validation_error("too few residuals for white-noise diagnostics");

  DiagnosticReport report;
  report.residual_correlogram = build_correlogram(make_series(res), max_lag);
  report.aic = fit.aic;
  report.bic = fit.bic;

  report.residual_mean = mean(res);
  const double band = 2.0 * std::sqrt(fit.sigma2 / n);
  report.residual_mean_ok = std::fabs(report.residual_mean) <= band;

  // Ljung-Box with df reduced by the number of ARMA parameters.
  const int fitted = fit.spec.p + fit.spec.q;
  std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1, 0.0);
  rho[0] = 1.0;
  for (const auto &row : report.residual_correlogram.rows)
    rho[static_cast<std::size_t>(row.lag)] = row.acf;

  bool all_pass = true;
  bool any_checked = false;
  for (int lag : kCheckedLags) {
    if (lag > max_lag) continue;
    const int df = lag - fitted;
    if (df < 1) continue;
    double q = 0.0;
    for (int k = 1; k <= lag; ++k)
      q += rho[static_cast<std::size_t>(k)] * rho[static_cast<std::size_t>(k)] /
           static_cast<double>(n - k);
    q *= static_cast<double>(n) * (n + 2.0);
    const double p = 1.0 - special::chi_square_cdf(q, df);
    report.lb_p_at[lag] = p;
    any_checked = true;
    if (p < p_threshold) all_pass = false;
  }
  report.white_noise_pass = any_checked && all_pass && report.residual_mean_ok;
  return report;
}

InformationCriteria information_criteria(const ArimaFit &fit) {
  return compute_information_criteria(fit.sigma2, fit.n_effective,
                                      fit.n_params());
}

std::vector<GridRow> grid_search(const TimeSeries &series, int p_max,
                                 int d_max, int q_max,
                                 const GridOptions &options) {
  if (p_max < 0 || d_max < 0 || q_max < 0 || p_max > 5 || d_max > 5 ||
      q_max > 5)
    throw std::invalid_argument("grid bounds must lie within the engine "
                                "limits 0..5");

  std::vector<ArimaSpec> specs;
  std::vector<bool> constant_choices;
  switch (options.constant) {
    case ConstantOption::with_constant: constant_choices = {true}; break;
    case ConstantOption::without_constant: constant_choices = {false}; break;
    case ConstantOption::both: constant_choices = {true, false}; break;
  }
  for (int p = 0; p <= p_max; ++p)
    for (int d = 0; d <= d_max; ++d)
      for (int q = 0; q <= q_max; ++q)
        for (bool c : constant_choices) {
          if (p + q == 0 && !c) continue;  // nothing to estimate
          specs.push_back(ArimaSpec{p, d, q, c});
        }

  std::vector<GridRow> rows(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      GridRow &row = rows[i];
      row.spec = specs[i];
      try {
        row.fit = fit(series, specs[i], options.fit);
        row.diagnostics = diagnose(row.fit, 0, options.p_threshold);
        row.ok = true;
      } catch (const std::exception &ex) {
        row.ok = false;
        row.error = ex.what();
      }
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = options.n_threads > 0
                              ? static_cast<std::size_t>(options.n_threads)
                              : (hw > 0 ? hw : 1);
  n_threads = std::min(n_threads, specs.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }

  auto rank_key = [](const GridRow &r) {
    // failed < non-converged < converged, passers first, then BIC.
    const int health = r.ok ? (r.fit.converged ? 0 : 1) : 2;
    const int pass = r.ok && r.diagnostics.white_noise_pass ? 0 : 1;
    const double bic = r.ok ? r.fit.bic
                            : std::numeric_limits<double>::infinity();
    return std::make_tuple(health, pass, bic, r.spec.p, r.spec.d, r.spec.q,
                           r.spec.include_constant ? 0 : 1);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const GridRow &a, const GridRow &b) {
                     return rank_key(a) < rank_key(b);
                   });
  return rows;
}

} // namespace paleoarima
