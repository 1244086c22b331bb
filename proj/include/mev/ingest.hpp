// Copyright (c) 2026 the mev developers.
// All rights reserved.
//
// mev is licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0.
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEV_INGEST_HPP
#define MEV_INGEST_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mev/errors.hpp"

namespace mev {

inline bool is_leap_year(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

inline int days_in_year(int year) { return is_leap_year(year) ? 366 : 365; }

inline int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> lengths{31, 28, 31, 30, 31, 30,
                                               31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return lengths[static_cast<std::size_t>(month - 1)];
}

struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  friend auto operator<=>(const Date&, const Date&) = default;
};

inline bool is_valid_date(const Date& d) {
  return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
         d.day <= days_in_month(d.year, d.month);
}

// 0-based day index within a calendar year to a Date.
inline Date date_from_day_of_year(int year, int day_index) {
  int m = 1;
  while (day_index >= days_in_month(year, m)) {
    day_index -= days_in_month(year, m);
    ++m;
  }
  return Date{year, m, day_index + 1};
}

inline std::string to_iso_string(const Date& d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

// Parses "YYYY-MM-DD". Returns nothing on any syntactic or calendar error.
inline std::optional<Date> parse_iso_date(std::string_view text) {
  const auto dash1 = text.find('-');
  if (dash1 == std::string_view::npos || dash1 == 0) return std::nullopt;
  const auto dash2 = text.find('-', dash1 + 1);
  if (dash2 == std::string_view::npos) return std::nullopt;

  const auto parse_int = [](std::string_view field, int& out) {
    if (field.empty() || field.size() > 4) return false;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
  };

  Date d;
  if (!parse_int(text.substr(0, dash1), d.year)) return std::nullopt;
  if (!parse_int(text.substr(dash1 + 1, dash2 - dash1 - 1), d.month))
    return std::nullopt;
  if (!parse_int(text.substr(dash2 + 1), d.day)) return std::nullopt;
  if (!is_valid_date(d)) return std::nullopt;
  return d;
}

// One calendar day. A missing measurement is a record whose value is absent,
// which is different from a recorded zero (a dry day).
struct DailyRecord {
  Date date;
  std::optional<double> value;
};

struct DailySeries {
  std::vector<DailyRecord> records;
};

struct IngestOptions {
  std::vector<std::string> missing_sentinels{"", "NA"};
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

}  // namespace detail

// Reads a two-column "date,value" CSV of daily observations. Dates are
// ISO-8601 and must be strictly increasing; gaps are allowed. An optional
// header row is detected and skipped. Values matching a missing sentinel
// become absent measurements; everything else must parse as a finite,
// non-negative number. Throws ParseError naming the 1-based line.
inline DailySeries parse_daily_csv(std::istream& in,
                                   const IngestOptions& opts = {}) {
  DailySeries series;
  std::string line;
  std::size_t line_no = 0;
  bool saw_content = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view row{line};
    if (detail::trim(row).empty()) continue;

    const auto comma = row.find(',');
    if (comma == std::string_view::npos)
      throw ParseError(line_no, "expected 'date,value'");
    const auto date_field = detail::trim(row.substr(0, comma));
    const auto value_field = detail::trim(row.substr(comma + 1));

    if (!saw_content && detail::iequals(date_field, "date") &&
        detail::iequals(value_field, "value")) {
      saw_content = true;
      continue;
    }
    saw_content = true;

    const auto date = parse_iso_date(date_field);
    if (!date)
      throw ParseError(line_no,
                       "invalid date '" + std::string(date_field) + "'");
    if (!series.records.empty() && !(series.records.back().date < *date))
      throw ParseError(line_no, "dates must be strictly increasing");

    DailyRecord rec{*date, std::nullopt};
    const bool missing =
        std::any_of(opts.missing_sentinels.begin(),
                    opts.missing_sentinels.end(),
                    [&](const std::string& s) { return value_field == s; });
    if (!missing) {
      double v = 0.0;
      const auto* first = value_field.data();
      const auto* last = value_field.data() + value_field.size();
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError(line_no,
                         "invalid value '" + std::string(value_field) + "'");
      if (!std::isfinite(v))
        throw ParseError(line_no, "value must be finite");
      if (v < 0.0) throw ParseError(line_no, "value must be non-negative");
      rec.value = v;
    }
    series.records.push_back(rec);
  }

  if (series.records.empty()) throw DataError("input contains no data rows");
  return series;
}

// One calendar year reduced to its wet-day magnitudes.
struct YearBlock {
  int year = 0;
  std::vector<double> magnitudes;
  int n_observed_days = 0;

  int n_events() const { return static_cast<int>(magnitudes.size()); }
};

inline std::optional<double> block_maximum(const YearBlock& block) {
  if (block.magnitudes.empty()) return std::nullopt;
  return *std::max_element(block.magnitudes.begin(), block.magnitudes.end());
}

struct BlockifyOptions {
  // Values must strictly exceed this to count as events.
  double wet_threshold = 0.0;
  // Years observing less than this fraction of their calendar days drop out.
  double min_coverage = 0.9;
};

struct DroppedYear {
  int year = 0;
  double coverage = 0.0;
};

struct BlockifyResult {
  std::vector<YearBlock> blocks;
  std::vector<DroppedYear> dropped;
};

// Splits a daily series into calendar-year blocks of event magnitudes.
// Missing values reduce a year's coverage but are never events; a year kept
// with zero events is a legitimate (dry) block. Throws DataError when no
// year survives the coverage cut.
inline BlockifyResult blockify(const DailySeries& series,
                               const BlockifyOptions& opts = {}) {
  if (!(std::isfinite(opts.wet_threshold) && opts.wet_threshold >= 0.0))
    throw std::invalid_argument("blockify: wet_threshold must be >= 0");
  if (!(opts.min_coverage >= 0.0 && opts.min_coverage <= 1.0))
    throw std::invalid_argument("blockify: min_coverage must lie in [0, 1]");

  BlockifyResult result;
  YearBlock current;
  bool open = false;

  const auto close = [&] {
    if (!open) return;
    const double coverage = static_cast<double>(current.n_observed_days) /
                            days_in_year(current.year);
    if (coverage >= opts.min_coverage)
      result.blocks.push_back(std::move(current));
    else
      result.dropped.push_back({current.year, coverage});
    current = YearBlock{};
    open = false;
  };

  for (const auto& rec : series.records) {
    if (!open || rec.date.year != current.year) {
      close();
      current.year = rec.date.year;
      open = true;
    }
    if (rec.value) {
      ++current.n_observed_days;
      if (*rec.value > opts.wet_threshold)
        current.magnitudes.push_back(*rec.value);
    }
  }
  close();

  if (result.blocks.empty())
    throw DataError("no year passed the coverage requirement");
  return result;
}

}  // namespace mev

#endif  // MEV_INGEST_HPP
