#include "paleoarima/cli_commands.hpp"

#include <filesystem>
#include <iostream>

#include "paleoarima/correlogram.hpp"
#include "paleoarima/diagnostics.hpp"
#include "paleoarima/errors.hpp"
#include "paleoarima/forecast.hpp"
#include "paleoarima/format.hpp"
#include "paleoarima/report_io.hpp"
#include "paleoarima/scenario.hpp"
#include "paleoarima/simulate.hpp"

namespace paleoarima {

namespace {

std::string out_path(const RunConfig &config, const std::string &name) {
  return (std::filesystem::path(config.output_dir) / name).string();
}

TimeSeries load_series(const RunConfig &config, EnsembleTable *table_out) {
  if (config.input_path.empty())
    throw input_error("--input is required for this command");
  EnsembleTable table =
      parse_percentiles_file(config.input_path, parse_column_map(config.columns));
  TimeSeries series = to_series(table, config.column);
  if (table_out) *table_out = std::move(table);
  return series;
}

ArimaSpec effective_spec(const RunConfig &config) {
  ArimaSpec spec = config.spec;
  if (config.d_override >= 0) spec.d = config.d_override;
  return spec;
}

FitOptions fit_options(const RunConfig &config) {
  FitOptions options;
  options.ma_sign = config.ma_sign;
  return options;
}

void note(const std::string &path) {
  std::cout << "wrote " << path << "\n";
}

} // namespace

int cmd_identify(const RunConfig &config) {
  TimeSeries series = load_series(config, nullptr);
  TimeSeries view = series;
  if (config.d_override > 0) {
    DifferencedSeries diffed = difference(series, config.d_override);
    view = make_series(diffed.values, series.step, series.origin_label);
  }
  const int max_lag = config.max_lag > 0
                          ? config.max_lag
                          : default_max_lag(static_cast<int>(view.size()));
  CorrelogramReport report = build_correlogram(view, max_lag);
  StationarityAssessment assessment = assess_stationarity(view, max_lag);

  const std::string csv_path = out_path(config, "fig9_correlogram.csv");
  write_text_file(csv_path, correlogram_csv(report));
  note(csv_path);
  const std::string plot_path = out_path(config, "acf_pacf_plot.csv");
  write_text_file(plot_path, acf_pacf_plot_csv(report));
  note(plot_path);
  const std::string json_path = out_path(config, "identify.json");
  write_text_file(json_path, identify_json(report, assessment));
  note(json_path);

  std::cout << "n=" << report.n << " max_lag=" << max_lag
            << " stationary=" << (assessment.stationary ? "yes" : "no")
            << " suggested_d=" << assessment.suggested_d << "\n";
  return 0;
}

int cmd_fit(const RunConfig &config) {
  TimeSeries series = load_series(config, nullptr);
  const ArimaSpec spec = effective_spec(config);
  ArimaFit model = fit(series, spec, fit_options(config));
  DiagnosticReport diag = diagnose(model, config.max_lag);

  const std::string params_path = out_path(config, "fig3_params.csv");
  write_text_file(params_path, params_table_csv(model));
  note(params_path);
  const std::string resid_path = out_path(config, "residuals.csv");
  write_text_file(resid_path, residuals_csv(model));
  note(resid_path);
  const std::string fit_path = out_path(config, "fit.json");
  write_text_file(fit_path, fit_json(model));
  note(fit_path);
  const std::string diag_path = out_path(config, "diagnostics.json");
  write_text_file(diag_path, diagnostics_json(model, diag));
  note(diag_path);

  if (config.grid_enabled) {
    GridOptions grid_options;
    grid_options.fit = fit_options(config);
    std::vector<GridRow> rows = grid_search(series, config.grid_p,
                                            config.grid_d, config.grid_q,
                                            grid_options);
    const std::string grid_csv_path = out_path(config, "grid_results.csv");
    write_text_file(grid_csv_path, grid_csv(rows));
    note(grid_csv_path);
    const std::string grid_json_path = out_path(config, "grid_results.json");
    write_text_file(grid_json_path, grid_json(rows));
    note(grid_json_path);
  }

  std::cout << "converged=" << (model.converged ? "yes" : "no")
            << " sigma2=" << format_double(model.sigma2)
            << " aic=" << format_double(model.aic)
            << " bic=" << format_double(model.bic)
            << " white_noise=" << (diag.white_noise_pass ? "pass" : "fail")
            << "\n";
  return model.converged ? 0 : 3;
}

int cmd_diagnose(const RunConfig &config) {
  TimeSeries series = load_series(config, nullptr);
  const ArimaSpec spec = effective_spec(config);
  ArimaFit model = fit(series, spec, fit_options(config));
  DiagnosticReport diag = diagnose(model, config.max_lag);

  const std::string corr_path =
      out_path(config, "fig4_residual_correlogram.csv");
  write_text_file(corr_path, correlogram_csv(diag.residual_correlogram));
  note(corr_path);
  const std::string diag_path = out_path(config, "diagnostics.json");
  write_text_file(diag_path, diagnostics_json(model, diag));
  note(diag_path);

  std::cout << "white_noise=" << (diag.white_noise_pass ? "pass" : "fail")
            << " residual_mean=" << format_double(diag.residual_mean) << "\n";
  return model.converged ? 0 : 3;
}

int cmd_forecast(const RunConfig &config) {
  TimeSeries series = load_series(config, nullptr);
  const ArimaSpec spec = effective_spec(config);
  ArimaFit model = fit(series, spec, fit_options(config));
  ForecastResult result = forecast(model, config.horizon, config.confidence);
  FittedValues fitted = fitted_values(model, series, config.confidence);

  const std::string forecast_path = out_path(config, "fig5_forecast.csv");
  write_text_file(forecast_path, forecast_csv(result));
  note(forecast_path);
  const std::string fit_path = out_path(config, "fig5_fit.csv");
  write_text_file(fit_path, fitted_csv(fitted, series));
  note(fit_path);
  const std::string json_path = out_path(config, "forecast.json");
  write_text_file(json_path, forecast_json(result));
  note(json_path);

  std::cout << "point[1]=" << format_double(result.points.front())
            << " lcl=" << format_double(result.lcl.front())
            << " ucl=" << format_double(result.ucl.front()) << "\n";
  return model.converged ? 0 : 3;
}

int cmd_scenario(const RunConfig &config) {
  EnsembleTable table;
  load_series(config, &table);
  const ArimaSpec spec = effective_spec(config);
  ScenarioReport report =
      run_scenario(table, spec, config.confidence, fit_options(config));

  const std::string json_path = out_path(config, "scenario.json");
  write_text_file(json_path, scenario_json(report));
  note(json_path);
  const std::string six_path = out_path(config, "six_estimates.csv");
  write_text_file(six_path, six_estimates_csv(report));
  note(six_path);
  for (const SeriesScenario &s : report.series) {
    if (!s.fitted) continue;
    const std::string path =
        out_path(config, "forecast_" + to_string(s.column) + ".csv");
    write_text_file(path, forecast_csv(s.forecast));
    note(path);
  }

  std::cout << "estimates_median=" << format_double(report.estimates_median)
            << "\n" << report.verdict << "\n";
  return report.all_converged ? 0 : 3;
}

int cmd_simulate(const RunConfig &config) {
  SimSpec spec;
  spec.ar = config.sim_ar;
  spec.ma = config.sim_ma;
  spec.constant = config.sim_constant;
  spec.sigma = config.sim_sigma;
  spec.n = config.sim_length;
  spec.seed = config.seed;
  TimeSeries series = simulate_arma(spec);

  const std::string path = out_path(config, "simulated.csv");
  write_text_file(path, series_csv(series));
  note(path);
  std::cout << "n=" << series.size() << " seed=" << config.seed << "\n";
  return 0;
}

} // namespace paleoarima
