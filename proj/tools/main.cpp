#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "paleoarima/cli_commands.hpp"
#include "paleoarima/errors.hpp"
#include "paleoarima/ingest.hpp"

namespace {

using paleoarima::RunConfig;

std::vector<int> parse_triple(const std::string &text,
                              const std::string &flag) {
  std::vector<int> parts;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      try {
        parts.push_back(std::stoi(cur));
      } catch (const std::exception &) {
        throw std::invalid_argument(flag + " expects three integers p,d,q; "
                                    "got '" + text + "'");
      }
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (parts.size() != 3)
    throw std::invalid_argument(flag + " expects three integers p,d,q; got '" +
                                text + "'");
  return parts;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Box-Jenkins ARIMA pipeline for paleoclimate percentile "
               "series: identification, estimation, diagnostics, "
               "forecasting, and the end-to-end percentile scenario."};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file; flags win");

  RunConfig config;
  std::string order_text = "1,0,1";
  std::string grid_text;
  std::string column_text = "median";
  std::string ma_sign_text = "spss";
  bool no_constant = false;

  app.add_option("-i,--input", config.input_path,
                 "Input percentile CSV (age + p5/median/p95 columns)");
  app.add_option("--columns", config.columns,
                 "Header overrides, e.g. age=ages,p5=5th,median=50th,p95=95th");
  app.add_option("--column", column_text, "Series to analyze")
      ->check(CLI::IsMember({"p5", "median", "p95"}))
      ->capture_default_str();
  app.add_option("--order", order_text, "ARIMA order p,d,q")
      ->capture_default_str();
  app.add_flag("--no-constant", no_constant, "Fit without a constant term");
  app.add_option("--d", config.d_override,
                 "Override differencing order (identify: difference first)")
      ->check(CLI::Range(0, 5));
  app.add_option("--max-lag", config.max_lag,
                 "Correlogram lag count (0 = min(20, n/4))")
      ->check(CLI::Range(0, 100));
  app.add_option("--confidence", config.confidence,
                 "Forecast confidence level in (0,1)")
      ->capture_default_str();
  app.add_option("--grid", grid_text,
                 "Also run a grid search up to pmax,dmax,qmax (fit command)");
  app.add_option("--ma-sign", ma_sign_text,
                 "MA reporting convention")
      ->check(CLI::IsMember({"spss", "boxjenkins"}))
      ->capture_default_str();
  app.add_option("-o,--out", config.output_dir, "Output directory")
      ->capture_default_str();
  app.add_option("--horizon", config.horizon, "Forecast steps (100-yr bins)")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Simulation RNG seed")
      ->capture_default_str();
  app.add_option("--length", config.sim_length, "Simulated series length")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  app.add_option("--sigma", config.sim_sigma, "Simulation innovation sd")
      ->capture_default_str();
  app.add_option("--constant", config.sim_constant,
                 "Simulation constant (process mean)")
      ->capture_default_str();
  app.add_option("--ar", config.sim_ar, "Simulation AR coefficients")
      ->delimiter(',');
  app.add_option("--ma", config.sim_ma,
                 "Simulation MA coefficients (plus-sign convention)")
      ->delimiter(',');

  CLI::App *identify = app.add_subcommand(
      "identify", "Correlogram and stationarity assessment");
  CLI::App *fit_cmd = app.add_subcommand(
      "fit", "Estimate an ARIMA model (optionally grid search)");
  CLI::App *diagnose = app.add_subcommand(
      "diagnose", "Residual white-noise diagnostics");
  CLI::App *forecast = app.add_subcommand(
      "forecast", "Out-of-sample forecast with confidence limits");
  CLI::App *scenario = app.add_subcommand(
      "scenario", "Three-series percentile experiment and verdict");
  CLI::App *simulate = app.add_subcommand(
      "simulate", "Generate an ARMA series from a seed");
  for (CLI::App *sub :
       {identify, fit_cmd, diagnose, forecast, scenario, simulate})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::vector<int> order = parse_triple(order_text, "--order");
    config.spec =
        paleoarima::ArimaSpec{order[0], order[1], order[2], !no_constant};
    if (!grid_text.empty()) {
      const std::vector<int> grid = parse_triple(grid_text, "--grid");
      config.grid_enabled = true;
      config.grid_p = grid[0];
      config.grid_d = grid[1];
      config.grid_q = grid[2];
    }
    config.column = paleoarima::percentile_column_from_string(column_text);
    config.ma_sign = paleoarima::ma_sign_from_string(ma_sign_text);
    if (!(config.confidence > 0.0 && config.confidence < 1.0))
      throw std::invalid_argument("--confidence must lie strictly in (0,1)");

    if (identify->parsed()) return paleoarima::cmd_identify(config);
    if (fit_cmd->parsed()) return paleoarima::cmd_fit(config);
    if (diagnose->parsed()) return paleoarima::cmd_diagnose(config);
    if (forecast->parsed()) return paleoarima::cmd_forecast(config);
    if (scenario->parsed()) return paleoarima::cmd_scenario(config);
    if (simulate->parsed()) return paleoarima::cmd_simulate(config);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const paleoarima::input_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
