#include "paleoarima/report_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "json.hpp"

#include "paleoarima/errors.hpp"
#include "paleoarima/format.hpp"

namespace paleoarima {

namespace {

using ordered_json = nlohmann::ordered_json;

// nlohmann serializes NaN as null; for CSV we write an explicit marker.
std::string csv_num(double v) {
  if (!std::isfinite(v)) return "NA";
  return format_double(v);
}

ordered_json json_num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json json_array(const std::vector<double> &xs) {
  ordered_json arr = ordered_json::array();
  for (double x : xs) arr.push_back(json_num(x));
  return arr;
}

ordered_json fit_to_json(const ArimaFit &fit) {
  ordered_json j;
  j["order"] = {fit.spec.p, fit.spec.d, fit.spec.q};
  j["include_constant"] = fit.spec.include_constant;
  j["ma_sign"] = to_string(fit.ma_sign);
  j["constant_mean_form"] = json_num(fit.constant_mean);
  j["constant_intercept_form"] = json_num(fit.constant_intercept);
  j["ar"] = json_array(fit.ar);
  j["ma_reported"] = json_array(fit.reported_ma());
  j["ma_internal"] = json_array(fit.ma);
  ordered_json params = ordered_json::array();
  const auto labels = fit.param_labels();
  const auto estimates = fit.reported_estimates();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ordered_json row;
    row["parameter"] = labels[i];
    row["estimate"] = json_num(estimates[i]);
    row["se"] = json_num(fit.se[i]);
    row["t"] = json_num(fit.t_stat[i]);
    row["sig"] = json_num(fit.p_value[i]);
    params.push_back(row);
  }
  j["parameters"] = params;
  j["se_available"] = fit.se_available;
  j["sigma2"] = json_num(fit.sigma2);
  j["log_likelihood"] = json_num(fit.log_likelihood);
  j["aic"] = json_num(fit.aic);
  j["bic"] = json_num(fit.bic);
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["n_effective"] = fit.n_effective;
  j["df"] = fit.df;
  j["warnings"] = fit.warnings;
  return j;
}

std::string dump(const ordered_json &j) { return j.dump(2) + "\n"; }

} // namespace

std::string correlogram_csv(const CorrelogramReport &report) {
  std::string out = "lag,acf,pacf,se_white_noise,q_stat,df,p_value\n";
  for (const CorrelogramRow &row : report.rows) {
    out += std::to_string(row.lag);
    out += ',';
    out += csv_num(row.acf);
    out += ',';
    out += csv_num(row.pacf);
    out += ',';
    out += csv_num(row.se_white_noise);
    out += ',';
    out += csv_num(row.q_stat);
    out += ',';
    out += std::to_string(row.df);
    out += ',';
    out += csv_num(row.p_value);
    out += '\n';
  }
  return out;
}

std::string acf_pacf_plot_csv(const CorrelogramReport &report, double band) {
  std::string out = "lag,acf,pacf,band_lo,band_hi\n";
  for (const CorrelogramRow &row : report.rows) {
    const double half = band * row.se_white_noise;
    out += std::to_string(row.lag);
    out += ',';
    out += csv_num(row.acf);
    out += ',';
    out += csv_num(row.pacf);
    out += ',';
    out += csv_num(-half);
    out += ',';
    out += csv_num(half);
    out += '\n';
  }
  return out;
}

std::string identify_json(const CorrelogramReport &report,
                          const StationarityAssessment &assessment) {
  ordered_json j;
  j["n"] = report.n;
  j["max_lag"] = static_cast<int>(report.rows.size());
  j["pacf_clamped"] = report.pacf_clamped;
  ordered_json rows = ordered_json::array();
  for (const CorrelogramRow &row : report.rows) {
    ordered_json r;
    r["lag"] = row.lag;
    r["acf"] = json_num(row.acf);
    r["pacf"] = json_num(row.pacf);
    r["se_white_noise"] = json_num(row.se_white_noise);
    r["q_stat"] = json_num(row.q_stat);
    r["df"] = row.df;
    r["p_value"] = json_num(row.p_value);
    rows.push_back(r);
  }
  j["rows"] = rows;
  ordered_json st;
  st["stationary"] = assessment.stationary;
  st["suggested_d"] = assessment.suggested_d;
  st["dominant_lag"] = assessment.dominant_lag;
  st["rule"] = assessment.rule;
  j["stationarity"] = st;
  return dump(j);
}

std::string params_table_csv(const ArimaFit &fit) {
  std::string out = "parameter,estimate,se,t,sig\n";
  const auto labels = fit.param_labels();
  const auto estimates = fit.reported_estimates();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += labels[i];
    out += ',';
    out += csv_num(estimates[i]);
    out += ',';
    out += csv_num(fit.se[i]);
    out += ',';
    out += csv_num(fit.t_stat[i]);
    out += ',';
    out += csv_num(fit.p_value[i]);
    out += '\n';
  }
  return out;
}

std::string residuals_csv(const ArimaFit &fit) {
  std::string out = "index,residual\n";
  for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
    out += std::to_string(fit.spec.d + static_cast<int>(i));
    out += ',';
    out += csv_num(fit.residuals[i]);
    out += '\n';
  }
  return out;
}

std::string fit_json(const ArimaFit &fit) { return dump(fit_to_json(fit)); }

std::string diagnostics_json(const ArimaFit &fit,
                             const DiagnosticReport &report) {
  ordered_json j;
  j["white_noise_pass"] = report.white_noise_pass;
  ordered_json lb;
  for (const auto &[lag, p] : report.lb_p_at)
    lb[std::to_string(lag)] = json_num(p);
  j["ljung_box_p"] = lb;
  j["residual_mean"] = json_num(report.residual_mean);
  j["residual_mean_ok"] = report.residual_mean_ok;
  j["aic"] = json_num(report.aic);
  j["bic"] = json_num(report.bic);
  ordered_json rows = ordered_json::array();
  for (const CorrelogramRow &row : report.residual_correlogram.rows) {
    ordered_json r;
    r["lag"] = row.lag;
    r["acf"] = json_num(row.acf);
    r["pacf"] = json_num(row.pacf);
    r["q_stat"] = json_num(row.q_stat);
    r["df"] = row.df;
    r["p_value"] = json_num(row.p_value);
    rows.push_back(r);
  }
  j["residual_correlogram"] = rows;
  j["fit"] = fit_to_json(fit);
  return dump(j);
}

std::string grid_csv(const std::vector<GridRow> &rows) {
  std::string out =
      "p,d,q,constant,ok,converged,white_noise_pass,aic,bic,sigma2,error\n";
  for (const GridRow &row : rows) {
    out += std::to_string(row.spec.p);
    out += ',';
    out += std::to_string(row.spec.d);
    out += ',';
    out += std::to_string(row.spec.q);
    out += ',';
    out += row.spec.include_constant ? "1" : "0";
    out += ',';
    out += row.ok ? "1" : "0";
    out += ',';
    out += row.ok && row.fit.converged ? "1" : "0";
    out += ',';
    out += row.ok && row.diagnostics.white_noise_pass ? "1" : "0";
    out += ',';
    out += row.ok ? csv_num(row.fit.aic) : "NA";
    out += ',';
    out += row.ok ? csv_num(row.fit.bic) : "NA";
    out += ',';
    out += row.ok ? csv_num(row.fit.sigma2) : "NA";
    out += ',';
    std::string err = row.error;
    for (char &c : err)
      if (c == ',' || c == '\n') c = ';';
    out += err;
    out += '\n';
  }
  return out;
}

std::string grid_json(const std::vector<GridRow> &rows) {
  ordered_json arr = ordered_json::array();
  for (const GridRow &row : rows) {
    ordered_json r;
    r["order"] = {row.spec.p, row.spec.d, row.spec.q};
    r["include_constant"] = row.spec.include_constant;
    r["ok"] = row.ok;
    if (row.ok) {
      r["converged"] = row.fit.converged;
      r["white_noise_pass"] = row.diagnostics.white_noise_pass;
      r["aic"] = json_num(row.fit.aic);
      r["bic"] = json_num(row.fit.bic);
      r["sigma2"] = json_num(row.fit.sigma2);
      r["estimates"] = json_array(row.fit.reported_estimates());
    } else {
      r["error"] = row.error;
    }
    arr.push_back(r);
  }
  return dump(arr);
}

std::string forecast_csv(const ForecastResult &result) {
  std::string out = "step,year_offset,point,lcl,ucl\n";
  for (int h = 0; h < result.horizon; ++h) {
    out += std::to_string(h + 1);
    out += ',';
    out += csv_num((h + 1) * result.time_step);
    out += ',';
    out += csv_num(result.points[static_cast<std::size_t>(h)]);
    out += ',';
    out += csv_num(result.lcl[static_cast<std::size_t>(h)]);
    out += ',';
    out += csv_num(result.ucl[static_cast<std::size_t>(h)]);
    out += '\n';
  }
  return out;
}

std::string forecast_json(const ForecastResult &result) {
  ordered_json j;
  j["horizon"] = result.horizon;
  j["confidence"] = json_num(result.confidence);
  j["time_step"] = json_num(result.time_step);
  j["points"] = json_array(result.points);
  j["lcl"] = json_array(result.lcl);
  j["ucl"] = json_array(result.ucl);
  j["psi_weights"] = json_array(result.psi_weights);
  j["intervals_reliable"] = result.intervals_reliable;
  return dump(j);
}

std::string fitted_csv(const FittedValues &fitted, const TimeSeries &series) {
  std::string out = "index,observed,fitted,lcl,ucl\n";
  for (std::size_t i = 0; i < fitted.fitted.size(); ++i) {
    const std::size_t idx = static_cast<std::size_t>(fitted.first_index) + i;
    out += std::to_string(idx);
    out += ',';
    out += csv_num(series.values[idx]);
    out += ',';
    out += csv_num(fitted.fitted[i]);
    out += ',';
    out += csv_num(fitted.lcl[i]);
    out += ',';
    out += csv_num(fitted.ucl[i]);
    out += '\n';
  }
  return out;
}

std::string scenario_json(const ScenarioReport &report) {
  ordered_json j;
  j["order"] = {report.spec.p, report.spec.d, report.spec.q};
  j["include_constant"] = report.spec.include_constant;
  j["confidence"] = json_num(report.confidence);
  ordered_json ref;
  ref["age_bp"] = json_num(report.reference_bin.age_bp);
  ref["row_index"] = static_cast<int>(report.reference_bin.row_index);
  ref["series_index"] = static_cast<int>(report.reference_bin.series_index);
  j["reference_bin"] = ref;
  ordered_json series = ordered_json::array();
  for (const SeriesScenario &s : report.series) {
    ordered_json e;
    e["column"] = to_string(s.column);
    e["reference_value"] = json_num(s.reference_value);
    e["fitted"] = s.fitted;
    e["converged"] = s.converged;
    if (!s.error.empty()) e["error"] = s.error;
    if (s.fitted) {
      e["fit"] = fit_to_json(s.fit);
      ordered_json f;
      f["point"] = json_num(s.forecast.points.empty()
                                ? std::numeric_limits<double>::quiet_NaN()
                                : s.forecast.points.front());
      f["lcl"] = json_num(s.forecast.lcl.empty()
                              ? std::numeric_limits<double>::quiet_NaN()
                              : s.forecast.lcl.front());
      f["ucl"] = json_num(s.forecast.ucl.empty()
                              ? std::numeric_limits<double>::quiet_NaN()
                              : s.forecast.ucl.front());
      e["forecast_next_bin"] = f;
    }
    series.push_back(e);
  }
  j["series"] = series;
  ordered_json six = ordered_json::array();
  const char *labels[6] = {"ar_median", "ma_median", "ar_p5",
                           "ma_p5",     "ar_p95",    "ma_p95"};
  for (std::size_t i = 0; i < 6; ++i) {
    ordered_json e;
    e["label"] = labels[i];
    e["value"] = json_num(report.six_estimates[i]);
    six.push_back(e);
  }
  j["six_estimates"] = six;
  j["six_estimates_used"] = json_array(report.six_estimates_used);
  j["estimates_median"] = json_num(report.estimates_median);
  j["all_converged"] = report.all_converged;
  j["ipcc_threshold"] = json_num(report.ipcc_threshold);
  j["verdict"] = report.verdict;
  return dump(j);
}

std::string six_estimates_csv(const ScenarioReport &report) {
  std::string out = "label,value\n";
  const char *labels[6] = {"ar_median", "ma_median", "ar_p5",
                           "ma_p5",     "ar_p95",    "ma_p95"};
  for (std::size_t i = 0; i < 6; ++i) {
    out += labels[i];
    out += ',';
    out += csv_num(report.six_estimates[i]);
    out += '\n';
  }
  out += "median,";
  out += csv_num(report.estimates_median);
  out += '\n';
  return out;
}

std::string series_csv(const TimeSeries &series,
                       const std::string &value_header) {
  std::string out = "index," + value_header + "\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += csv_num(series.values[i]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string &path, const std::string &content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open output file: " + path);
  out << content;
  if (!out) throw input_error("failed writing output file: " + path);
}

} // namespace paleoarima
