#pragma once

#include <string>

#include "paleoarima/correlogram.hpp"
#include "paleoarima/diagnostics.hpp"
#include "paleoarima/estimation.hpp"
#include "paleoarima/forecast.hpp"
#include "paleoarima/scenario.hpp"
#include "paleoarima/time_series.hpp"

namespace paleoarima {

/// Report and plot-data writers. Every function produces byte-deterministic
/// text: floats use shortest round-trip formatting, JSON keeps insertion
/// order, line endings are '\n'.

std::string correlogram_csv(const CorrelogramReport &report);
std::string acf_pacf_plot_csv(const CorrelogramReport &report,
                              double band = 1.96);
std::string identify_json(const CorrelogramReport &report,
                          const StationarityAssessment &assessment);

std::string params_table_csv(const ArimaFit &fit);
std::string residuals_csv(const ArimaFit &fit);
std::string fit_json(const ArimaFit &fit);
std::string diagnostics_json(const ArimaFit &fit,
                             const DiagnosticReport &report);

std::string grid_csv(const std::vector<GridRow> &rows);
std::string grid_json(const std::vector<GridRow> &rows);

std::string forecast_csv(const ForecastResult &result);
std::string forecast_json(const ForecastResult &result);
std::string fitted_csv(const FittedValues &fitted, const TimeSeries &series);

std::string scenario_json(const ScenarioReport &report);
std::string six_estimates_csv(const ScenarioReport &report);

std::string series_csv(const TimeSeries &series,
                       const std::string &value_header = "value");

/// Write text to a file, creating parent directories; throws input_error on
/// failure.
void write_text_file(const std::string &path, const std::string &content);

} // namespace paleoarima
