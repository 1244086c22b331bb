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

#ifndef MEV_MEVD_HPP
#define MEV_MEVD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mev/distributions.hpp"
#include "mev/errors.hpp"
#include "mev/numerics.hpp"

namespace mev {

// CDF of the largest of n_events independent draws, F(x)^n, evaluated in
// log space. Zero events make the year's maximum vacuous: the CDF is 1
// everywhere, so such years dilute exceedance probabilities rather than
// contributing magnitudes.
inline double annual_max_cdf(const WeibullParams& params, int n_events,
                             double x) {
  if (n_events < 0)
    throw std::domain_error("annual_max_cdf: n_events must be >= 0");
  if (n_events == 0) return 1.0;
  const double log_f = weibull_log_cdf(params, x);
  if (log_f < -690.0) return 0.0;  // F below ~1e-300
  return std::exp(static_cast<double>(n_events) * log_f);
}

// CDF of the k-th smallest of n independent draws,
//   sum_{j=k..n} C(n,j) F^j (1-F)^(n-j),
// accumulated in log space against over/underflow. k = n is the maximum
// and reduces to annual_max_cdf.
inline double order_statistic_cdf(const WeibullParams& params, int n, int k,
                                  double x) {
  if (n < 1) throw std::domain_error("order_statistic_cdf: n must be >= 1");
  if (k < 1 || k > n)
    throw std::domain_error("order_statistic_cdf: k must lie in [1, n]");
  const double log_f = weibull_log_cdf(params, x);
  if (log_f == -std::numeric_limits<double>::infinity()) return 0.0;
  const double log_s = -weibull_exponent(params, x);

  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - k + 1));
  for (int j = k; j <= n; ++j) {
    double t = log_binomial_coefficient(n, j) + j * log_f;
    if (j < n) t += (n - j) * log_s;
    terms.push_back(t);
    max_term = std::max(max_term, t);
  }
  if (max_term == -std::numeric_limits<double>::infinity()) return 0.0;

  double rest = 0.0;
  for (double t : terms)
    if (t != max_term) rest += std::exp(t - max_term);
  // One term equals max_term exactly; summing the others around it keeps
  // full precision near 1.
  return std::exp(max_term + std::log1p(rest));
}

struct MevdEntry {
  WeibullParams params;
  int n_events = 0;
};

// Compound distribution of the annual maximum over a heterogeneous record:
// the average of per-year maxima CDFs F(x|theta_i)^(n_i). Identical
// (theta, n) pairs are grouped at construction so long records with few
// distinct years evaluate in O(distinct) per point.
class MevdModel {
 public:
  explicit MevdModel(std::vector<MevdEntry> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty())
      throw std::invalid_argument("MevdModel: need at least one year");
    for (const auto& e : entries_)
      if (e.n_events < 0)
        throw std::invalid_argument("MevdModel: n_events must be >= 0");

    std::vector<const MevdEntry*> order;
    order.reserve(entries_.size());
    for (const auto& e : entries_) order.push_back(&e);
    const auto key_less = [](const MevdEntry* a, const MevdEntry* b) {
      return std::make_tuple(a->params.scale(), a->params.shape(),
                             a->params.position(), a->n_events) <
             std::make_tuple(b->params.scale(), b->params.shape(),
                             b->params.position(), b->n_events);
    };
    std::sort(order.begin(), order.end(), key_less);
    for (const MevdEntry* e : order) {
      if (!groups_.empty() && groups_.back().params == e->params &&
          groups_.back().n_events == e->n_events) {
        groups_.back().count += 1.0;
      } else {
        groups_.push_back({e->params, e->n_events, 1.0});
      }
    }

    for (const auto& e : entries_) {
      max_events_ = std::max(max_events_, e.n_events);
      if (e.n_events == 0) ++n_empty_years_;
    }
  }

  const std::vector<MevdEntry>& entries() const { return entries_; }
  std::size_t n_years() const { return entries_.size(); }
  std::size_t n_empty_years() const { return n_empty_years_; }
  int max_events() const { return max_events_; }

  double cdf(double x) const {
    double acc = 0.0;
    double log_f = 0.0;
    const WeibullParams* prev = nullptr;
    for (const auto& g : groups_) {
      if (g.n_events == 0) {
        acc += g.count;
        continue;
      }
      if (prev == nullptr || !(*prev == g.params)) {
        log_f = weibull_log_cdf(g.params, x);
        prev = &g.params;
      }
      if (log_f >= -690.0)
        acc += g.count * std::exp(static_cast<double>(g.n_events) * log_f);
    }
    return std::clamp(acc / static_cast<double>(entries_.size()), 0.0, 1.0);
  }

  // Inverts the CDF to |cdf(x) - p| <= kQuantileTol. Years with zero
  // events put an atom at the bottom of the support: any p at or below
  // that mass maps to 0. A record made only of such years cannot be
  // inverted at all.
  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error("MevdModel::quantile: p must lie in (0, 1)");
    if (max_events_ == 0)
      throw NumericError(
          "MevdModel::quantile: degenerate model, every year has zero "
          "events");

    const double f0 = cdf(0.0) - p;
    if (f0 >= 0.0) return 0.0;

    const double base =
        std::pow(p, 1.0 / static_cast<double>(max_events_));
    double hi = 0.0;
    for (const auto& g : groups_)
      if (g.n_events > 0)
        hi = std::max(hi, weibull_quantile(g.params, base));
    if (!(hi > 0.0)) hi = 1.0;
    double fhi = cdf(hi) - p;
    int expand = 0;
    while (fhi < 0.0 && expand++ < 200) {
      hi *= 2.0;
      fhi = cdf(hi) - p;
    }
    if (fhi < 0.0)
      throw NumericError("MevdModel::quantile: failed to bracket");

    const auto res = brent_root([&](double x) { return cdf(x) - p; }, 0.0,
                                hi, f0, fhi, kQuantileTol);
    if (!res.converged)
      throw NumericError("MevdModel::quantile: inversion did not converge");
    return res.x;
  }

  static constexpr double kQuantileTol = 1e-10;

 private:
  struct Group {
    WeibullParams params;
    int n_events;
    double count;
  };

  std::vector<MevdEntry> entries_;
  std::vector<Group> groups_;
  int max_events_ = 0;
  std::size_t n_empty_years_ = 0;
};

struct ReturnLevelRow {
  std::string model_tag;
  double return_period = 0.0;
  double annual_prob = 0.0;
  std::optional<double> level;
  std::string error;
};

using ReturnLevelTable = std::vector<ReturnLevelRow>;

// Evaluates quantiles at the annual non-exceedance probabilities
// 1 - 1/T_r. Rows that fail (bad period, model inversion error) carry the
// message instead of a level; one bad row never aborts the table.
template <class QuantileFn>
ReturnLevelTable make_return_level_table(std::string_view model_tag,
                                         std::span<const double> periods,
                                         QuantileFn&& quantile) {
  ReturnLevelTable table;
  table.reserve(periods.size());
  for (double t : periods) {
    ReturnLevelRow row;
    row.model_tag = model_tag;
    row.return_period = t;
    if (!(std::isfinite(t) && t > 1.0)) {
      row.annual_prob = std::numeric_limits<double>::quiet_NaN();
      row.error = "return period must exceed 1";
      table.push_back(std::move(row));
      continue;
    }
    row.annual_prob = 1.0 - 1.0 / t;
    try {
      row.level = quantile(row.annual_prob);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    table.push_back(std::move(row));
  }
  return table;
}

inline constexpr double kDefaultReturnPeriods[] = {2.0,  5.0,   10.0, 20.0,
                                                   50.0, 100.0, 200.0};

inline ReturnLevelTable return_levels(
    const MevdModel& model,
    std::span<const double> periods = kDefaultReturnPeriods) {
  return make_return_level_table(
      "mevd", periods, [&](double p) { return model.quantile(p); });
}

inline ReturnLevelTable return_levels(
    const GevParams& params,
    std::span<const double> periods = kDefaultReturnPeriods) {
  return make_return_level_table(
      "gev", periods, [&](double p) { return gev_quantile(params, p); });
}

}  // namespace mev

#endif  // MEV_MEVD_HPP
