#include "core/series.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace rvol {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* units_name(Units u) {
  switch (u) {
    case Units::vol: return "vol";
    case Units::var: return "var";
    case Units::logvar: return "logvar";
  }
  return "var";
}

Units units_from_name(const std::string& name) {
  if (name == "vol") return Units::vol;
  if (name == "var") return Units::var;
  if (name == "logvar") return Units::logvar;
  fail_invalid("unknown units tag: " + name);
}

namespace {

// Days since epoch for ISO dates; -1 when the label is not a date.
long parse_iso_day(const std::string& d) {
  if (d.size() < 10 || d[4] != '-' || d[7] != '-') return -1;
  int y = 0, m = 0, day = 0;
  auto num = [&](int pos, int len, int& out) {
    auto [p, ec] = std::from_chars(d.data() + pos, d.data() + pos + len, out);
    return ec == std::errc() && p == d.data() + pos + len;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, day)) return -1;
  if (m < 1 || m > 12 || day < 1 || day > 31) return -1;
  // civil-to-day algorithm (Howard Hinnant's days_from_civil)
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

void flag_gaps(VolSeries& s) {
  s.has_gaps = false;
  long prev = -1;
  for (const auto& d : s.dates) {
    const long day = parse_iso_day(d);
    if (day < 0) return;  // non-date labels: gap detection not applicable
    if (prev >= 0 && day - prev > 4) s.has_gaps = true;  // > long weekend
    prev = day;
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_value(const std::string& tok, double& out) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\t')) --e;
  if (b == e) return false;
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

}  // namespace

void VolSeries::validate() const {
  if (!dates.empty() && dates.size() != values.size())
    fail_invalid("VolSeries: dates/values length mismatch");
  if (units != Units::logvar) {
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!(values[i] > 0.0))
        fail_data("VolSeries '" + label + "': nonpositive value at row " + std::to_string(i) +
                  " with units=" + units_name(units));
  }
  for (double v : values)
    if (!std::isfinite(v)) fail_data("VolSeries '" + label + "': non-finite value");
  if (!dates.empty()) {
    std::set<std::string> seen;
    for (const auto& d : dates)
      if (!seen.insert(d).second) fail_data("VolSeries '" + label + "': duplicate date " + d);
  }
}

std::vector<double> VolSeries::log_vol() const {
  std::vector<double> out(values.size());
  switch (units) {
    case Units::vol:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(values[i]);
      break;
    case Units::var:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * std::log(values[i]);
      break;
    case Units::logvar:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * values[i];
      break;
  }
  return out;
}

std::vector<double> VolSeries::variance() const {
  std::vector<double> out(values.size());
  switch (units) {
    case Units::vol:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i] * values[i];
      break;
    case Units::var:
      out = values;
      break;
    case Units::logvar:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(values[i]);
      break;
  }
  return out;
}

VolSeries VolSeries::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > values.size()) fail_invalid("VolSeries::slice: bad range");
  VolSeries s;
  s.values.assign(values.begin() + begin, values.begin() + end);
  if (!dates.empty()) s.dates.assign(dates.begin() + begin, dates.begin() + end);
  s.units = units;
  s.label = label;
  flag_gaps(s);
  return s;
}

VolSeries make_series(std::vector<double> values, Units units, std::string label) {
  VolSeries s;
  s.values = std::move(values);
  s.units = units;
  s.label = std::move(label);
  s.validate();
  return s;
}

IngestResult ingest_csv(const std::string& path, const IngestOptions& opts) {
  std::ifstream in(path);
  if (!in) fail_io("cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) fail_data(path + ": empty file");
  const auto cols = split_csv_line(header);

  std::size_t date_col = 0, value_col = 1;
  if (opts.format == "generic-csv") {
    if (cols.size() < 2) fail_data(path + ": generic-csv needs a date,value header");
  } else if (opts.format == "oxford-man-csv") {
    if (opts.column.empty()) fail_invalid("oxford-man-csv requires an asset column key");
    auto it = std::find(cols.begin(), cols.end(), opts.column);
    if (it == cols.end()) fail_data(path + ": unknown column '" + opts.column + "'");
    value_col = static_cast<std::size_t>(it - cols.begin());
  } else {
    fail_invalid("unknown dataset format: " + opts.format);
  }

  IngestResult res;
  res.series.units = opts.units;
  res.series.label = opts.column.empty() ? cols[value_col] : opts.column;

  const long lo = opts.date_min.empty() ? -1 : parse_iso_day(opts.date_min);
  const long hi = opts.date_max.empty() ? -1 : parse_iso_day(opts.date_max);

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto toks = split_csv_line(line);
    if (toks.size() <= std::max(date_col, value_col)) {
      res.row_errors.push_back("line " + std::to_string(lineno) + ": too few columns");
      continue;
    }
    std::string date = toks[date_col];
    // Oxford-Man exports sometimes carry a time suffix; keep the date part.
    if (date.size() > 10 && date[4] == '-' && date[7] == '-') date = date.substr(0, 10);
    const std::string& raw = toks[value_col];
    if (raw.empty() || raw == "NA" || raw == "nan" || raw == "NaN") {
      ++res.dropped_rows;
      continue;
    }
    double v = 0;
    if (!parse_value(raw, v)) {
      res.row_errors.push_back("line " + std::to_string(lineno) + ": unparseable value '" + raw + "'");
      continue;
    }
    if (!std::isfinite(v) || (opts.units != Units::logvar && v <= 0.0)) {
      ++res.dropped_rows;
      continue;
    }
    if (lo >= 0 || hi >= 0) {
      const long day = parse_iso_day(date);
      if (day >= 0) {
        if (lo >= 0 && day < lo) continue;
        if (hi >= 0 && day > hi) continue;
      }
    }
    res.series.dates.push_back(date);
    res.series.values.push_back(v);
  }
  if (res.series.values.empty()) fail_data(path + ": no usable rows");
  res.series.validate();
  flag_gaps(res.series);
  return res;
}

void save_series_csv(const VolSeries& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail_io("cannot write " + path);
  out << "date,value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out << (i < s.dates.size() ? s.dates[i] : std::to_string(i)) << ','
        << format_double(s.values[i]) << '\n';
  }
  if (!out) fail_io("write failed: " + path);
}

}  // namespace rvol
