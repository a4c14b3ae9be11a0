#pragma once

#include <array>
#include <string>
#include <vector>

#include "paleoarima/estimation.hpp"
#include "paleoarima/forecast.hpp"
#include "paleoarima/ingest.hpp"

namespace paleoarima {

struct SeriesScenario {
  PercentileColumn column = PercentileColumn::median;
  double reference_value = 0.0;  // bin value subtracted during rebasing
  bool fitted = false;           // fit completed without throwing
  bool converged = false;
  std::string error;
  ArimaFit fit;
  ForecastResult forecast;  // valid when fitted
};

struct ScenarioReport {
  ArimaSpec spec;
  double confidence = 0.95;
  ReferenceBin reference_bin;
  // Stored in extraction order: median, p5, p95.
  std::vector<SeriesScenario> series;
  // Fixed order [AR_med, MA_med, AR_p5, MA_p5, AR_p95, MA_p95], reporting
  // convention applied; NaN where a slot is unavailable.
  std::array<double, 6> six_estimates{};
  // Estimates actually entering the median (converged fits only).
  std::vector<double> six_estimates_used;
  double estimates_median = 0.0;  // the coefficient-median headline figure
  bool all_converged = false;
  double ipcc_threshold = 1.5;
  std::string verdict;
};

/// End-to-end experiment: rebase each percentile series on the 1800-1900
/// bin, fit all three (in parallel), assemble the six coefficient estimates,
/// take their median, run one-bin forecasts, and compare everything against
/// the 1.5 degree threshold. Non-converged series are flagged and excluded
/// from the median rather than failing the run.
ScenarioReport run_scenario(const EnsembleTable &table,
                            const ArimaSpec &spec = ArimaSpec{1, 0, 1, true},
                            double confidence = 0.95,
                            const FitOptions &options = {});

/// Deterministic verdict: whether the coefficient median and each one-bin
/// forecast point sit below / at / above the threshold. Boundary counts as
/// "at" (not below).
std::string compare_ipcc(double estimates_median,
                         const std::vector<SeriesScenario> &series,
                         double threshold = 1.5);

} // namespace paleoarima
