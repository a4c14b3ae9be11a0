#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paleoarima/estimation.hpp"
#include "paleoarima/ingest.hpp"

namespace paleoarima {

/// Everything a CLI run needs; flags and config files both fill this in.
struct RunConfig {
  std::string input_path;
  std::string columns;  // "age=...,p5=...,median=...,p95=..." overrides
  PercentileColumn column = PercentileColumn::median;
  ArimaSpec spec{1, 0, 1, true};
  int d_override = -1;  // >= 0 replaces spec.d
  int max_lag = 0;      // 0 -> min(20, n/4)
  double confidence = 0.95;
  bool grid_enabled = false;
  int grid_p = 2;
  int grid_d = 1;
  int grid_q = 2;
  MaSign ma_sign = MaSign::spss;
  std::string output_dir = ".";
  int horizon = 1;
  // simulate
  std::uint64_t seed = 42;
  int sim_length = 121;
  double sim_sigma = 1.0;
  double sim_constant = 0.0;
  std::vector<double> sim_ar;
  std::vector<double> sim_ma;
};

/// Subcommand bodies. Each returns the process exit code: 0 success,
/// 3 when a fit did not converge (outputs are still written). Input and
/// argument problems surface as exceptions for the caller to map to exit 2
/// (input_error, std::invalid_argument) or 4 (anything else).
int cmd_identify(const RunConfig &config);
int cmd_fit(const RunConfig &config);
int cmd_diagnose(const RunConfig &config);
int cmd_forecast(const RunConfig &config);
int cmd_scenario(const RunConfig &config);
int cmd_simulate(const RunConfig &config);

} // namespace paleoarima
