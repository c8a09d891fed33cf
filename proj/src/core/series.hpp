#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace rvol {

enum class Units { vol, var, logvar };

const char* units_name(Units u);
Units units_from_name(const std::string& name);

/// Regularly spaced daily volatility-proxy series. Values are interpreted per
/// the units tag; increments are always taken on index (trading-day) lags, so
/// calendar gaps do not break the series (they are only flagged).
struct VolSeries {
  std::vector<std::string> dates;  // ISO "YYYY-MM-DD" or plain row labels
  std::vector<double> values;
  Units units = Units::var;
  std::string label;
  bool has_gaps = false;

  std::size_t size() const { return values.size(); }

  void validate() const;

  /// log sigma_k for every element, converting from the units tag.
  std::vector<double> log_vol() const;

  /// sigma_k^2 for every element.
  std::vector<double> variance() const;

  VolSeries slice(std::size_t begin, std::size_t end) const;
};

VolSeries make_series(std::vector<double> values, Units units, std::string label);

struct IngestOptions {
  std::string format = "generic-csv";  // "generic-csv" | "oxford-man-csv"
  std::string column;                  // asset column key for oxford-man, e.g. "SPX2.rv"
  Units units = Units::var;
  std::string date_min;  // inclusive ISO bounds; empty = unbounded
  std::string date_max;
};

struct IngestResult {
  VolSeries series;
  std::size_t dropped_rows = 0;   // missing / nonpositive values
  std::vector<std::string> row_errors;  // unparseable rows with line numbers
};

IngestResult ingest_csv(const std::string& path, const IngestOptions& opts);

void save_series_csv(const VolSeries& s, const std::string& path);

}  // namespace rvol
