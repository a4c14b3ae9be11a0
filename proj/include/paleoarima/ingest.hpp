#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "paleoarima/time_series.hpp"

namespace paleoarima {

struct EnsembleRow {
  double age_bp = 0.0;  // years before present (present = newest bin's epoch)
  double p5 = 0.0;      // degrees C
  double median = 0.0;
  double p95 = 0.0;
};

/// Percentile table in file order. Ages must be strictly monotonic with
/// constant spacing; percentiles ordered p5 <= median <= p95 on every row.
struct EnsembleTable {
  std::vector<EnsembleRow> rows;
  double spacing = 0.0;  // |age step| in years, 0 for single-row tables
  std::size_t size() const { return rows.size(); }
};

/// Header names for the four required columns. The bundled fixture uses
/// these defaults; files with other headers are handled via --columns.
struct ColumnMap {
  std::string age = "age_bp";
  std::string p5 = "p5";
  std::string median = "median";
  std::string p95 = "p95";
};

/// Parse "age=ages,p5=5th,median=50th,p95=95th" style overrides; any subset
/// of keys may appear. Throws std::invalid_argument on unknown keys.
ColumnMap parse_column_map(const std::string &description);

/// Parse a percentile CSV. Blank lines and lines starting with '#' are
/// skipped. Throws schema_error for missing mapped columns, parse_error for
/// non-numeric cells, validation_error for ordering/spacing violations; all
/// errors carry 1-based line numbers where applicable.
EnsembleTable parse_percentiles_csv(std::istream &source,
                                    const ColumnMap &columns = {});

/// Convenience wrapper; throws input_error when the file cannot be opened.
EnsembleTable parse_percentiles_file(const std::string &path,
                                     const ColumnMap &columns = {});

/// CSV text that parses back to an identical table (shortest round-trip
/// float formatting).
std::string serialize(const EnsembleTable &table,
                      const ColumnMap &columns = {});

enum class PercentileColumn { p5, median, p95 };

std::string to_string(PercentileColumn column);
PercentileColumn percentile_column_from_string(const std::string &name);

/// Chronological-ascending TimeSeries (oldest bin first, newest last) with
/// step equal to the table's age spacing.
TimeSeries to_series(const EnsembleTable &table, PercentileColumn column);

struct ReferenceBin {
  std::size_t row_index = 0;     // position in the table (file order)
  std::size_t series_index = 0;  // position in to_series output
  double age_bp = 0.0;
};

/// Locate the 1800-1900 reference bin by age: rows with age_bp in
/// [119, 219], nearest 150, ties to the older bin. Throws validation_error
/// when no row qualifies.
ReferenceBin find_reference_bin(const EnsembleTable &table);

} // namespace paleoarima
