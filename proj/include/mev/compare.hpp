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

#ifndef MEV_COMPARE_HPP
#define MEV_COMPARE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mev/errors.hpp"
#include "mev/fitting.hpp"
#include "mev/ingest.hpp"
#include "mev/mevd.hpp"
#include "mev/station.hpp"
#include "mev/superstat.hpp"

namespace mev {

struct CompareOptions {
  int window_years = 20;
  std::vector<double> return_periods{std::begin(kDefaultReturnPeriods),
                                     std::end(kDefaultReturnPeriods)};
  EstimatorMethod estimator = EstimatorMethod::pwm;
  int min_events_per_year = 2;
  int n_days = 365;
  bool overlapping = false;
};

// Relative-error summary of one estimator at one return period, across all
// training windows where the estimator produced a level.
struct CompareCell {
  std::string model;
  double return_period = 0.0;
  std::size_t n_windows = 0;
  double mean_abs_rel_err = 0.0;
  double q05 = 0.0;  // quantiles of the signed relative error
  double q95 = 0.0;
};

struct CompareReport {
  std::vector<CompareCell> cells;
  std::size_t n_windows = 0;
  int window_years = 0;
};

namespace detail {

inline double signed_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const auto n = static_cast<double>(v.size());
  auto k = static_cast<std::ptrdiff_t>(std::ceil(q * n));
  k = std::clamp<std::ptrdiff_t>(k, 1, static_cast<std::ptrdiff_t>(v.size()));
  return v[static_cast<std::size_t>(k - 1)];
}

}  // namespace detail

// Split-sample experiment: every short window of the record trains each
// estimator, the resulting return levels are scored as relative errors
// against a reference quantile function for the whole process, and errors
// are summarized per (estimator, return period). An estimator that fails
// on a window is simply absent from that window's errors.
template <class TruthQuantileFn>
CompareReport compare_models(std::span<const YearBlock> blocks,
                             TruthQuantileFn&& truth_quantile,
                             const CompareOptions& opts) {
  if (opts.window_years < 1)
    throw std::invalid_argument("compare_models: window_years must be >= 1");
  if (static_cast<std::size_t>(opts.window_years) > blocks.size())
    throw DataError(
        "compare_models: window is longer than the record");
  for (double t : opts.return_periods)
    if (!(std::isfinite(t) && t > 1.0))
      throw std::invalid_argument(
          "compare_models: return periods must exceed 1");

  const auto S = static_cast<std::size_t>(opts.window_years);
  std::vector<std::size_t> starts;
  if (opts.overlapping) {
    for (std::size_t s = 0; s + S <= blocks.size(); ++s) starts.push_back(s);
  } else {
    for (std::size_t s = 0; s + S <= blocks.size(); s += S)
      starts.push_back(s);
  }

  std::map<std::pair<std::string, double>, std::vector<double>> errors;
  const auto record = [&](const std::string& model, double t, double level,
                          double truth) {
    errors[{model, t}].push_back((level - truth) / truth);
  };

  for (const std::size_t start : starts) {
    const auto window = blocks.subspan(start, S);
    std::vector<double> maxima;
    for (const auto& b : window)
      if (const auto m = block_maximum(b)) maxima.push_back(*m);

    std::vector<double> truths(opts.return_periods.size());
    for (std::size_t i = 0; i < opts.return_periods.size(); ++i)
      truths[i] = truth_quantile(1.0 - 1.0 / opts.return_periods[i]);

    try {
      const auto fit = fit_station(
          window, {opts.estimator, opts.min_events_per_year, false});
      for (std::size_t i = 0; i < opts.return_periods.size(); ++i)
        record("mevd", opts.return_periods[i],
               fit.model.quantile(1.0 - 1.0 / opts.return_periods[i]),
               truths[i]);
    } catch (const std::exception&) {
    }

    try {
      SuperstatFitOptions sopts;
      sopts.n_days = opts.n_days;
      sopts.estimator = opts.estimator;
      const auto fit = fit_superstat(window, maxima, sopts);
      for (std::size_t i = 0; i < opts.return_periods.size(); ++i)
        record("superstat", opts.return_periods[i],
               fit.model.quantile(1.0 - 1.0 / opts.return_periods[i]),
               truths[i]);
    } catch (const std::exception&) {
    }

    try {
      const auto fit = fit_gev_annual_maxima(maxima);
      if (fit.converged)
        for (std::size_t i = 0; i < opts.return_periods.size(); ++i)
          record("gev", opts.return_periods[i],
                 gev_quantile(*fit.params,
                              1.0 - 1.0 / opts.return_periods[i]),
                 truths[i]);
    } catch (const std::exception&) {
    }
  }

  CompareReport report;
  report.n_windows = starts.size();
  report.window_years = opts.window_years;
  for (const char* model : {"mevd", "superstat", "gev"}) {
    for (double t : opts.return_periods) {
      const auto it = errors.find({model, t});
      if (it == errors.end() || it->second.empty()) continue;
      const auto& errs = it->second;
      double mean_abs = 0.0;
      for (double e : errs) mean_abs += std::fabs(e);
      mean_abs /= static_cast<double>(errs.size());
      report.cells.push_back({model, t, errs.size(), mean_abs,
                              detail::signed_quantile(errs, 0.05),
                              detail::signed_quantile(errs, 0.95)});
    }
  }
  return report;
}

}  // namespace mev

#endif  // MEV_COMPARE_HPP
