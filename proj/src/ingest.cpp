#include "paleoarima/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "paleoarima/errors.hpp"
#include "paleoarima/format.hpp"

namespace paleoarima {

namespace {

std::string trim(const std::string &s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string &cell, std::size_t line_no,
                  const std::string &column) {
  const std::string t = trim(cell);
  double value = 0.0;
  const char *first = t.data();
  const char *last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw parse_error("line " + std::to_string(line_no) +
                      ": cannot parse numeric value for column '" + column +
                      "': '" + t + "'");
  return value;
}

} // namespace

ColumnMap parse_column_map(const std::string &description) {
  ColumnMap map;
  if (trim(description).empty()) return map;
  std::stringstream ss(description);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("column mapping entries must look like "
                                  "key=header: '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (value.empty())
      throw std::invalid_argument("empty header name for column key '" + key +
                                  "'");
    if (key == "age") map.age = value;
    else if (key == "p5") map.p5 = value;
    else if (key == "median") map.median = value;
    else if (key == "p95") map.p95 = value;
    else throw std::invalid_argument("unknown column key '" + key + "'");
  }
  return map;
}

EnsembleTable parse_percentiles_csv(std::istream &source,
                                    const ColumnMap &columns) {
  std::string line;
  std::size_t line_no = 0;

  // Header row: first non-blank, non-comment line.
  std::vector<std::string> header;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw schema_error("empty input: no header row found");

  auto column_index = [&](const std::string &name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw schema_error("missing column '" + name + "' in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t i_age = column_index(columns.age);
  const std::size_t i_p5 = column_index(columns.p5);
  const std::size_t i_med = column_index(columns.median);
  const std::size_t i_p95 = column_index(columns.p95);
  const std::size_t need =
      1 + std::max({i_age, i_p5, i_med, i_p95});

  EnsembleTable table;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < need)
      throw parse_error("line " + std::to_string(line_no) + ": expected at "
                        "least " + std::to_string(need) + " cells, got " +
                        std::to_string(cells.size()));
    EnsembleRow row;
    row.age_bp = parse_cell(cells[i_age], line_no, columns.age);
    row.p5 = parse_cell(cells[i_p5], line_no, columns.p5);
    row.median = parse_cell(cells[i_med], line_no, columns.median);
    row.p95 = parse_cell(cells[i_p95], line_no, columns.p95);
    if (!(row.p5 <= row.median && row.median <= row.p95))
      throw validation_error("line " + std::to_string(line_no) +
                             ": percentile ordering violated "
                             "(need p5 <= median <= p95)");
    table.rows.push_back(row);
  }
  if (table.rows.empty()) throw validation_error("no data rows in input");

  if (table.rows.size() >= 2) {
    const double first_step = table.rows[1].age_bp - table.rows[0].age_bp;
    if (first_step == 0.0)
      throw validation_error("ages are not strictly monotonic");
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      const double step = table.rows[i].age_bp - table.rows[i - 1].age_bp;
      if (step == 0.0 || (step > 0.0) != (first_step > 0.0))
        throw validation_error("ages are not strictly monotonic (row " +
                               std::to_string(i + 1) + " of data)");
      if (std::fabs(step - first_step) > 1e-6 * std::fabs(first_step))
        throw validation_error("age spacing is not constant (row " +
                               std::to_string(i + 1) + " of data)");
    }
    table.spacing = std::fabs(first_step);
  }
  return table;
}

EnsembleTable parse_percentiles_file(const std::string &path,
                                     const ColumnMap &columns) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  return parse_percentiles_csv(in, columns);
}

std::string serialize(const EnsembleTable &table, const ColumnMap &columns) {
  std::string out = columns.age + "," + columns.p5 + "," + columns.median +
                    "," + columns.p95 + "\n";
  for (const EnsembleRow &row : table.rows) {
    out += format_double(row.age_bp);
    out += ',';
    out += format_double(row.p5);
    out += ',';
    out += format_double(row.median);
    out += ',';
    out += format_double(row.p95);
    out += '\n';
  }
  return out;
}

std::string to_string(PercentileColumn column) {
  switch (column) {
    case PercentileColumn::p5: return "p5";
    case PercentileColumn::median: return "median";
    case PercentileColumn::p95: return "p95";
  }
  return "median";
}

PercentileColumn percentile_column_from_string(const std::string &name) {
  if (name == "p5") return PercentileColumn::p5;
  if (name == "median") return PercentileColumn::median;
  if (name == "p95") return PercentileColumn::p95;
  throw std::invalid_argument("unknown percentile column '" + name +
                              "' (expected p5, median, or p95)");
}

TimeSeries to_series(const EnsembleTable &table, PercentileColumn column) {
  std::vector<std::size_t> order(table.rows.size());
  std::iota(order.begin(), order.end(), 0);
  // Oldest (largest age) first gives chronological ascending order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return table.rows[a].age_bp > table.rows[b].age_bp;
                   });
  std::vector<double> values;
  values.reserve(order.size());
  for (std::size_t i : order) {
    const EnsembleRow &row = table.rows[i];
    switch (column) {
      case PercentileColumn::p5: values.push_back(row.p5); break;
      case PercentileColumn::median: values.push_back(row.median); break;
      case PercentileColumn::p95: values.push_back(row.p95); break;
    }
  }
  const double step = table.spacing > 0.0 ? table.spacing : 1.0;
  return make_series(values, step,
                     "newest age_bp=" +
                         format_double(table.rows[order.back()].age_bp));
}

ReferenceBin find_reference_bin(const EnsembleTable &table) {
  // The 1800-1900 CE window sits 119-219 years before the newest bin's
  // epoch; pick the covered bin nearest the window midpoint.
  constexpr double kLow = 119.0, kHigh = 219.0, kMid = 150.0;
  bool found = false;
  std::size_t best_row = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double age = table.rows[i].age_bp;
    if (age < kLow || age > kHigh) continue;
    if (!found) {
      best_row = i;
      found = true;
      continue;
    }
    const double cur = std::fabs(table.rows[best_row].age_bp - kMid);
    const double cand = std::fabs(age - kMid);
    if (cand < cur || (cand == cur && age > table.rows[best_row].age_bp))
      best_row = i;
  }
  if (!found)
    throw validation_error("no bin with age_bp in [119, 219] to serve as "
                           "the 1800-1900 reference period");

  ReferenceBin bin;
  bin.row_index = best_row;
  bin.age_bp = table.rows[best_row].age_bp;
  // Position after the descending-age sort used by to_series: every older
  // (larger-age) bin comes first.
  std::size_t older = 0;
  for (const EnsembleRow &row : table.rows)
    if (row.age_bp > bin.age_bp) ++older;
  bin.series_index = older;
  return bin;
}

} // namespace paleoarima
