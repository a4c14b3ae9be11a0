#include "paleoarima/scenario.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "paleoarima/format.hpp"

namespace paleoarima {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string relation(double x, double threshold) {
  if (x < threshold) return "below";
  if (x > threshold) return "above";
  return "at";
}

} // namespace

ScenarioReport run_scenario(const EnsembleTable &table, const ArimaSpec &spec,
                            double confidence, const FitOptions &options) {
  validate(spec);
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0,1)");

  ScenarioReport report;
  report.spec = spec;
  report.confidence = confidence;
  report.reference_bin = find_reference_bin(table);

  const std::array<PercentileColumn, 3> order = {
      PercentileColumn::median, PercentileColumn::p5, PercentileColumn::p95};
  report.series.resize(order.size());

  const IndexWindow ref_window{report.reference_bin.series_index,
                               report.reference_bin.series_index + 1};
  auto run_one = [&](std::size_t slot) {
    SeriesScenario &out = report.series[slot];
    out.column = order[slot];
    try {
      TimeSeries raw = to_series(table, order[slot]);
      TimeSeries rebased = rebase_anomaly(raw, ref_window);
      out.reference_value =
          raw.values[report.reference_bin.series_index];
      out.fit = fit(rebased, spec, options);
      out.fitted = true;
      out.converged = out.fit.converged;
      out.forecast = forecast(out.fit, 1, confidence);
    } catch (const std::exception &ex) {
      out.fitted = false;
      out.converged = false;
      out.error = ex.what();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    pool.emplace_back(run_one, i);
  for (auto &t : pool) t.join();

  report.six_estimates.fill(kNan);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const SeriesScenario &s = report.series[i];
    if (!s.fitted) continue;
    if (spec.p >= 1) report.six_estimates[2 * i] = s.fit.ar[0];
    if (spec.q >= 1) report.six_estimates[2 * i + 1] = s.fit.reported_ma()[0];
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const SeriesScenario &s = report.series[i];
    if (!s.fitted || !s.converged) continue;
    for (int j = 0; j < 2; ++j) {
      const double v = report.six_estimates[2 * i + j];
      if (std::isfinite(v)) report.six_estimates_used.push_back(v);
    }
  }
  report.all_converged = true;
  for (const SeriesScenario &s : report.series)
    if (!s.converged) report.all_converged = false;

  report.estimates_median = report.six_estimates_used.empty()
                                ? kNan
                                : percentile(report.six_estimates_used, 50.0);
  report.verdict = compare_ipcc(report.estimates_median, report.series,
                                report.ipcc_threshold);
  return report;
}

std::string compare_ipcc(double estimates_median,
                         const std::vector<SeriesScenario> &series,
                         double threshold) {
  std::string out;
  if (std::isfinite(estimates_median)) {
    out += "coefficient_median " + format_double(estimates_median) + " is " +
           relation(estimates_median, threshold) + " the " +
           format_double(threshold) + " C threshold";
  } else {
    out += "coefficient_median unavailable";
  }
  for (const SeriesScenario &s : series) {
    out += "; ";
    out += to_string(s.column);
    if (!s.fitted || s.forecast.points.empty()) {
      out += " forecast unavailable";
      continue;
    }
    const double point = s.forecast.points.front();
    out += " one-bin forecast " + format_double(point) + " is " +
           relation(point, threshold) + " threshold";
  }
  return out;
}

} // namespace paleoarima
