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

#ifndef MEV_IO_HPP
#define MEV_IO_HPP

#include <charconv>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <string>
#include <variant>

#include <json.hpp>

#include "mev/compare.hpp"
#include "mev/errors.hpp"
#include "mev/ingest.hpp"
#include "mev/mevd.hpp"
#include "mev/simulator.hpp"
#include "mev/superstat.hpp"

namespace mev {

inline constexpr int kModelSchemaVersion = 1;

// Shortest decimal form that parses back to the identical double. Keeps
// every emitted file deterministic down to the byte.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline nlohmann::json to_json(const MevdModel& model,
                              std::string_view estimator = {}) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : model.entries()) {
    entries.push_back({{"scale", e.params.scale()},
                       {"shape", e.params.shape()},
                       {"position", e.params.position()},
                       {"n_events", e.n_events}});
  }
  nlohmann::json j{{"schema_version", kModelSchemaVersion},
                   {"type", "mevd"},
                   {"entries", std::move(entries)}};
  if (!estimator.empty()) j["estimator"] = estimator;
  return j;
}

inline nlohmann::json to_json(const SuperstatModel& model) {
  nlohmann::json years = nlohmann::json::array();
  for (const auto& y : model.years()) {
    years.push_back({{"dry_prob", y.dry_prob},
                     {"scale", y.params.scale()},
                     {"shape", y.params.shape()}});
  }
  return {{"schema_version", kModelSchemaVersion},
          {"type", "superstat"},
          {"n_days", model.n_days()},
          {"position", model.position()},
          {"years", std::move(years)}};
}

inline nlohmann::json to_json(const GevParams& params) {
  return {{"schema_version", kModelSchemaVersion},
          {"type", "gev"},
          {"location", params.location()},
          {"scale", params.scale()},
          {"shape", params.shape()}};
}

namespace detail {

inline void require_schema(const nlohmann::json& j, const char* type) {
  if (!j.is_object()) throw DataError("model file: not a JSON object");
  if (!j.contains("schema_version") ||
      j["schema_version"] != kModelSchemaVersion)
    throw DataError("model file: unsupported schema_version");
  if (!j.contains("type") || j["type"] != type)
    throw DataError(std::string("model file: expected type '") + type +
                    "'");
}

template <class Fn>
auto json_guard(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

inline MevdModel mevd_from_json(const nlohmann::json& j) {
  detail::require_schema(j, "mevd");
  return detail::json_guard("mevd model", [&] {
    std::vector<MevdEntry> entries;
    for (const auto& e : j.at("entries")) {
      entries.push_back({WeibullParams(e.at("scale").get<double>(),
                                       e.at("shape").get<double>(),
                                       e.value("position", 0.0)),
                         e.at("n_events").get<int>()});
    }
    return MevdModel(std::move(entries));
  });
}

inline SuperstatModel superstat_from_json(const nlohmann::json& j) {
  detail::require_schema(j, "superstat");
  return detail::json_guard("superstat model", [&] {
    const double position = j.value("position", 0.0);
    std::vector<SuperstatYear> years;
    for (const auto& y : j.at("years")) {
      years.push_back({y.at("dry_prob").get<double>(),
                       WeibullParams(y.at("scale").get<double>(),
                                     y.at("shape").get<double>(),
                                     position)});
    }
    return SuperstatModel(std::move(years), j.at("n_days").get<int>(),
                          position);
  });
}

inline GevParams gev_from_json(const nlohmann::json& j) {
  detail::require_schema(j, "gev");
  return detail::json_guard("gev model", [&] {
    return GevParams(j.at("location").get<double>(),
                     j.at("scale").get<double>(),
                     j.at("shape").get<double>());
  });
}

using AnyModel = std::variant<MevdModel, SuperstatModel, GevParams>;

inline AnyModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw DataError("model file: missing 'type'");
  const auto type = j["type"].get<std::string>();
  if (type == "mevd") return mevd_from_json(j);
  if (type == "superstat") return superstat_from_json(j);
  if (type == "gev") return gev_from_json(j);
  throw DataError("model file: unknown type '" + type + "'");
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path,
                            const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

// "model,T_r,p,level" with an empty level for failed rows.
inline void write_return_levels_csv(std::ostream& out,
                                    const ReturnLevelTable& table) {
  out << "model,T_r,p,level\n";
  for (const auto& row : table) {
    out << row.model_tag << ',' << format_double(row.return_period) << ','
        << format_double(row.annual_prob) << ',';
    if (row.level) out << format_double(*row.level);
    out << '\n';
  }
}

inline nlohmann::json to_json(const ReturnLevelTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table) {
    nlohmann::json r{{"model", row.model_tag},
                     {"T_r", row.return_period},
                     {"p", row.annual_prob}};
    if (row.level)
      r["level"] = *row.level;
    else
      r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  return rows;
}

// "model,T_r,S,mean_rel_err,q05,q95"; mean_rel_err is the mean of the
// absolute relative errors, q05/q95 are quantiles of the signed ones.
inline void write_compare_csv(std::ostream& out,
                              const CompareReport& report) {
  out << "model,T_r,S,mean_rel_err,q05,q95\n";
  for (const auto& c : report.cells) {
    out << c.model << ',' << format_double(c.return_period) << ','
        << report.window_years << ',' << format_double(c.mean_abs_rel_err)
        << ',' << format_double(c.q05) << ',' << format_double(c.q95)
        << '\n';
  }
}

inline nlohmann::json to_json(const CompareReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"model", c.model},
                     {"T_r", c.return_period},
                     {"S", report.window_years},
                     {"n_windows", c.n_windows},
                     {"mean_rel_err", c.mean_abs_rel_err},
                     {"q05", c.q05},
                     {"q95", c.q95}});
  }
  return {{"window_years", report.window_years},
          {"n_windows", report.n_windows},
          {"cells", std::move(cells)}};
}

// Daily CSV of a synthetic station, starting each year on January 1.
// Restricted to records of at most 365 days per year so a leap year's
// shorter listing still clears the default coverage cut on re-ingest.
inline void write_daily_csv(std::ostream& out,
                            const SyntheticStation& station,
                            int start_year = 2001) {
  if (station.n_days > 365)
    throw DataError("write_daily_csv: n_days must be <= 365");
  out << "date,value\n";
  for (std::size_t y = 0; y < station.n_years(); ++y) {
    const int year = start_year + static_cast<int>(y);
    for (std::size_t d = 0; d < station.daily[y].size(); ++d) {
      const Date date = date_from_day_of_year(year, static_cast<int>(d));
      out << to_iso_string(date) << ','
          << format_double(station.daily[y][d]) << '\n';
    }
  }
}

}  // namespace mev

#endif  // MEV_IO_HPP
