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

#ifndef MEV_STATION_HPP
#define MEV_STATION_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mev/errors.hpp"
#include "mev/fitting.hpp"
#include "mev/ingest.hpp"
#include "mev/mevd.hpp"

namespace mev {

struct StationFitOptions {
  EstimatorMethod estimator = EstimatorMethod::pwm;
  // Years with fewer events than this are excluded (or, with
  // pool_small_years, given parameters fitted to all events pooled).
  int min_events_per_year = 2;
  bool pool_small_years = false;
};

struct SkippedYear {
  int year = 0;
  int n_events = 0;
  std::string reason;
};

struct StationFitResult {
  MevdModel model;
  EstimatorMethod estimator = EstimatorMethod::pwm;
  std::vector<int> years;  // calendar year per model entry
  std::vector<SkippedYear> skipped;
};

// Fits one magnitude distribution per year block and assembles the
// compound annual-maximum model. A year either contributes its own
// parameters with its true event count, or is skipped (with the reason
// recorded); there is no silent estimator fallback.
inline StationFitResult fit_station(std::span<const YearBlock> blocks,
                                    const StationFitOptions& opts = {}) {
  if (opts.min_events_per_year < 2)
    throw std::invalid_argument(
        "fit_station: min_events_per_year must be >= 2");
  if (blocks.empty()) throw DataError("fit_station: no year blocks");

  std::vector<double> pooled;
  if (opts.pool_small_years) {
    for (const auto& b : blocks)
      pooled.insert(pooled.end(), b.magnitudes.begin(), b.magnitudes.end());
  }
  std::optional<WeibullParams> pooled_params;
  if (opts.pool_small_years && pooled.size() >= 2) {
    const auto fit = fit_weibull(pooled, opts.estimator);
    if (fit.converged) pooled_params = fit.params;
  }

  std::vector<MevdEntry> entries;
  std::vector<int> years;
  std::vector<SkippedYear> skipped;
  for (const auto& b : blocks) {
    if (b.n_events() == 0) {
      skipped.push_back({b.year, 0, "no events"});
      continue;
    }
    if (b.n_events() < opts.min_events_per_year) {
      if (pooled_params) {
        entries.push_back({*pooled_params, b.n_events()});
        years.push_back(b.year);
      } else {
        skipped.push_back({b.year, b.n_events(), "too few events"});
      }
      continue;
    }
    const auto fit = fit_weibull(b.magnitudes, opts.estimator);
    if (!fit.converged) {
      skipped.push_back(
          {b.year, b.n_events(), "estimator did not converge"});
      continue;
    }
    entries.push_back({*fit.params, b.n_events()});
    years.push_back(b.year);
  }

  if (entries.empty())
    throw DataError("fit_station: no usable years after filtering");
  return {MevdModel(std::move(entries)), opts.estimator, std::move(years),
          std::move(skipped)};
}

}  // namespace mev

#endif  // MEV_STATION_HPP
