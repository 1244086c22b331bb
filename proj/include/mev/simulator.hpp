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

#ifndef MEV_SIMULATOR_HPP
#define MEV_SIMULATOR_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "mev/distributions.hpp"
#include "mev/errors.hpp"
#include "mev/ingest.hpp"

namespace mev {

// Random generation scheme, fixed for reproducibility across platforms:
//   - each simulated year y gets its own std::mt19937_64 seeded with
//     splitmix64(master_seed, y), so records are extendable and years are
//     independent of how many came before;
//   - uniforms map the top 53 bits to ((x >> 11) + 0.5) * 2^-53, strictly
//     inside (0, 1);
//   - all variates come from explicit inverse transforms or Box-Muller on
//     those uniforms.
// std::mt19937_64's output sequence is fully specified by the standard,
// and no std::*_distribution (whose algorithms are implementation-defined)
// is used, so a (seed, spec) pair reproduces byte-identical output
// everywhere.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double next_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller, cosine branch only, so every normal costs exactly two
// uniforms and the draw count per variate never depends on the values.
inline double next_standard_normal(std::mt19937_64& rng) {
  const double u1 = next_uniform(rng);
  const double u2 = next_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Wet/dry occurrence process for one year of n_days.
class OccurrenceSpec {
 public:
  enum class Kind { binomial, markov1 };

  static OccurrenceSpec binomial(double dry_prob, int n_days = 365) {
    if (n_days < 1)
      throw std::invalid_argument("OccurrenceSpec: n_days must be >= 1");
    if (!(dry_prob >= 0.0 && dry_prob <= 1.0))
      throw std::invalid_argument(
          "OccurrenceSpec: dry_prob must lie in [0, 1]");
    OccurrenceSpec s;
    s.kind_ = Kind::binomial;
    s.n_days_ = n_days;
    s.dry_prob_ = dry_prob;
    return s;
  }

  // First-order two-state chain: p01 = P(wet | previous dry),
  // p11 = P(wet | previous wet). The first day is wet with p_init; any
  // negative p_init selects the stationary wet probability.
  static OccurrenceSpec markov1(double p01, double p11,
                                double p_init = -1.0, int n_days = 365) {
    if (n_days < 1)
      throw std::invalid_argument("OccurrenceSpec: n_days must be >= 1");
    if (!(p01 >= 0.0 && p01 <= 1.0) || !(p11 >= 0.0 && p11 <= 1.0))
      throw std::invalid_argument(
          "OccurrenceSpec: transition probabilities must lie in [0, 1]");
    OccurrenceSpec s;
    s.kind_ = Kind::markov1;
    s.n_days_ = n_days;
    s.p01_ = p01;
    s.p11_ = p11;
    if (p_init < 0.0) {
      const double denom = 1.0 + p01 - p11;
      s.p_init_ = denom > 0.0 ? p01 / denom : 1.0;
    } else {
      if (!(p_init <= 1.0))
        throw std::invalid_argument(
            "OccurrenceSpec: p_init must lie in [0, 1]");
      s.p_init_ = p_init;
    }
    return s;
  }

  Kind kind() const { return kind_; }
  int n_days() const { return n_days_; }
  double dry_prob() const { return dry_prob_; }
  double p01() const { return p01_; }
  double p11() const { return p11_; }
  double p_init() const { return p_init_; }

 private:
  OccurrenceSpec() = default;

  Kind kind_ = Kind::binomial;
  int n_days_ = 365;
  double dry_prob_ = 0.5;
  double p01_ = 0.0;
  double p11_ = 0.0;
  double p_init_ = 0.0;
};

// Year-to-year variability of the magnitude parameters: the scale is
// lognormal around scale_median, the shape is normal truncated to the
// positive axis, the position is fixed. Zero spreads pin the parameter
// and consume no draws.
class HyperParams {
 public:
  HyperParams(double scale_median, double scale_log_sd, double shape_mean,
              double shape_sd, double position = 0.0)
      : scale_median_(scale_median),
        scale_log_sd_(scale_log_sd),
        shape_mean_(shape_mean),
        shape_sd_(shape_sd),
        position_(position) {
    if (!(std::isfinite(scale_median) && scale_median > 0.0))
      throw std::invalid_argument(
          "HyperParams: scale_median must be positive");
    if (!(std::isfinite(scale_log_sd) && scale_log_sd >= 0.0))
      throw std::invalid_argument(
          "HyperParams: scale_log_sd must be non-negative");
    if (!(std::isfinite(shape_mean) && shape_mean > 0.0))
      throw std::invalid_argument("HyperParams: shape_mean must be positive");
    if (!(std::isfinite(shape_sd) && shape_sd >= 0.0))
      throw std::invalid_argument(
          "HyperParams: shape_sd must be non-negative");
    if (!(std::isfinite(position) && position >= 0.0))
      throw std::invalid_argument(
          "HyperParams: position must be non-negative");
  }

  static HyperParams fixed(const WeibullParams& p) {
    return HyperParams(p.scale(), 0.0, p.shape(), 0.0, p.position());
  }

  WeibullParams draw(std::mt19937_64& rng) const {
    double scale = scale_median_;
    if (scale_log_sd_ > 0.0)
      scale = scale_median_ *
              std::exp(scale_log_sd_ * next_standard_normal(rng));
    double shape = shape_mean_;
    if (shape_sd_ > 0.0) {
      int guard = 0;
      do {
        shape = shape_mean_ + shape_sd_ * next_standard_normal(rng);
      } while (!(shape > 0.0) && ++guard < 1000);
      if (!(shape > 0.0))
        throw NumericError("HyperParams: shape rejection did not terminate");
    }
    return WeibullParams(scale, shape, position_);
  }

  double scale_median() const { return scale_median_; }
  double scale_log_sd() const { return scale_log_sd_; }
  double shape_mean() const { return shape_mean_; }
  double shape_sd() const { return shape_sd_; }
  double position() const { return position_; }

 private:
  double scale_median_;
  double scale_log_sd_;
  double shape_mean_;
  double shape_sd_;
  double position_;
};

namespace detail {

// One year of daily values. Emits exactly n_days values through per_day
// (zero = dry); the draw order (parameters, then each day's occurrence
// uniform, then its magnitude uniform if wet) is part of the
// reproducibility contract shared by every consumer.
template <class PerDay>
WeibullParams simulate_year(std::mt19937_64& rng, const OccurrenceSpec& occ,
                            const HyperParams& hyper, PerDay&& per_day) {
  const WeibullParams theta = hyper.draw(rng);
  bool prev_wet = false;
  for (int d = 0; d < occ.n_days(); ++d) {
    double p_wet;
    if (occ.kind() == OccurrenceSpec::Kind::binomial)
      p_wet = 1.0 - occ.dry_prob();
    else if (d == 0)
      p_wet = occ.p_init();
    else
      p_wet = prev_wet ? occ.p11() : occ.p01();
    const bool wet = next_uniform(rng) < p_wet;
    prev_wet = wet;
    double value = 0.0;
    if (wet) value = weibull_quantile(theta, next_uniform(rng));
    per_day(value);
  }
  return theta;
}

}  // namespace detail

// A fully materialized synthetic record: daily values per year plus the
// parameters that generated each year.
struct SyntheticStation {
  int n_days = 365;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> daily;
  std::vector<WeibullParams> year_params;

  std::size_t n_years() const { return daily.size(); }
};

inline SyntheticStation simulate_station(const OccurrenceSpec& occ,
                                         const HyperParams& hyper, int years,
                                         std::uint64_t seed) {
  if (years < 1)
    throw std::invalid_argument("simulate_station: years must be >= 1");
  SyntheticStation station;
  station.n_days = occ.n_days();
  station.seed = seed;
  station.daily.reserve(static_cast<std::size_t>(years));
  station.year_params.reserve(static_cast<std::size_t>(years));
  for (int y = 0; y < years; ++y) {
    std::mt19937_64 rng(splitmix64(seed, static_cast<std::uint64_t>(y)));
    std::vector<double> day_values;
    day_values.reserve(static_cast<std::size_t>(occ.n_days()));
    const auto theta = detail::simulate_year(
        rng, occ, hyper, [&](double v) { day_values.push_back(v); });
    station.daily.push_back(std::move(day_values));
    station.year_params.push_back(theta);
  }
  return station;
}

// Per-year reduction of the same process: event count and maximum only.
// Consumes draws identically to simulate_station, so the two agree
// bit-for-bit on any shared (seed, spec); this is what makes simulated
// records of millions of years tractable.
struct SimulatedYearSummary {
  WeibullParams params;
  int n_events = 0;
  double maximum = 0.0;  // 0 when the year is entirely dry
};

inline std::vector<SimulatedYearSummary> simulate_annual_summaries(
    const OccurrenceSpec& occ, const HyperParams& hyper, int years,
    std::uint64_t seed) {
  if (years < 1)
    throw std::invalid_argument(
        "simulate_annual_summaries: years must be >= 1");
  std::vector<SimulatedYearSummary> out;
  out.reserve(static_cast<std::size_t>(years));
  for (int y = 0; y < years; ++y) {
    std::mt19937_64 rng(splitmix64(seed, static_cast<std::uint64_t>(y)));
    int n_events = 0;
    double maximum = 0.0;
    const auto theta =
        detail::simulate_year(rng, occ, hyper, [&](double v) {
          if (v > 0.0) {
            ++n_events;
            if (v > maximum) maximum = v;
          }
        });
    out.push_back({theta, n_events, maximum});
  }
  return out;
}

inline std::vector<YearBlock> station_year_blocks(
    const SyntheticStation& station, int start_year = 1) {
  std::vector<YearBlock> blocks;
  blocks.reserve(station.n_years());
  for (std::size_t y = 0; y < station.n_years(); ++y) {
    YearBlock b;
    b.year = start_year + static_cast<int>(y);
    b.n_observed_days = station.n_days;
    for (double v : station.daily[y])
      if (v > 0.0) b.magnitudes.push_back(v);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

struct AnnualMaxima {
  std::vector<double> values;  // years with at least one event
  int dry_years = 0;
};

inline AnnualMaxima annual_maxima_of(
    std::span<const SimulatedYearSummary> summaries) {
  AnnualMaxima out;
  for (const auto& s : summaries) {
    if (s.n_events == 0)
      ++out.dry_years;
    else
      out.values.push_back(s.maximum);
  }
  return out;
}

// Reference distribution from a long simulation: the empirical CDF of the
// simulated annual maxima. Requires enough years to be meaningful.
inline EmpiricalCdf oracle_cdf(std::span<const double> maxima) {
  if (maxima.size() < 100)
    throw std::invalid_argument("oracle_cdf: need at least 100 maxima");
  return EmpiricalCdf(std::vector<double>(maxima.begin(), maxima.end()));
}

}  // namespace mev

#endif  // MEV_SIMULATOR_HPP
