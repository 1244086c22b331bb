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

#ifndef MEV_SUPERSTAT_HPP
#define MEV_SUPERSTAT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mev/distributions.hpp"
#include "mev/errors.hpp"
#include "mev/fitting.hpp"
#include "mev/ingest.hpp"
#include "mev/mevd.hpp"
#include "mev/numerics.hpp"
#include "mev/station.hpp"

namespace mev {

// Annual-maximum CDF when each of n_days is independently dry with
// probability dry_prob and wet magnitudes follow the given Weibull:
//   [dry_prob + (1 - dry_prob) F(x)]^n_days,
// evaluated as exp(n_days * log1p(-(1 - dry_prob) * S(x))). At
// dry_prob = 0 the base is F itself, where the dedicated log-CDF keeps
// small exponents accurate.
inline double superstat_annual_cdf(double dry_prob,
                                   const WeibullParams& params, int n_days,
                                   double x) {
  if (!(dry_prob >= 0.0 && dry_prob <= 1.0))
    throw std::domain_error(
        "superstat_annual_cdf: dry_prob must lie in [0, 1]");
  if (n_days < 1)
    throw std::domain_error("superstat_annual_cdf: n_days must be >= 1");
  double log_base;
  if (dry_prob == 0.0)
    log_base = weibull_log_cdf(params, x);
  else
    log_base = std::log1p(-(1.0 - dry_prob) * weibull_survival(params, x));
  if (log_base < -690.0) return 0.0;
  return std::exp(static_cast<double>(n_days) * log_base);
}

// The same annual-maximum CDF written as the explicit mixture over wet-day
// counts, sum_n P(n wet) F(x)^n, accumulated in log space. Algebraically
// identical to superstat_annual_cdf; kept as an independently computed
// route so the reduction can be checked rather than assumed.
inline double mevd_binomial_cdf(const BinomialOccurrence& occ,
                                const WeibullParams& params, double x) {
  const double log_f = weibull_log_cdf(params, x);
  const int n_days = occ.n_days();

  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n_days) + 1);
  for (int n = 0; n <= n_days; ++n) {
    double t = binomial_log_pmf(occ, n);
    if (n > 0) {
      if (log_f == -std::numeric_limits<double>::infinity())
        t = -std::numeric_limits<double>::infinity();
      else
        t += n * log_f;
    }
    terms.push_back(t);
    max_term = std::max(max_term, t);
  }
  if (max_term == -std::numeric_limits<double>::infinity()) return 0.0;

  double rest = 0.0;
  for (double t : terms)
    if (t != max_term) rest += std::exp(t - max_term);
  return std::exp(max_term + std::log1p(rest));
}

// Yearly state of the closed-form model: a dry-day probability plus the
// wet-magnitude parameters (which carry the shared position).
struct SuperstatYear {
  double dry_prob = 0.0;
  WeibullParams params;
};

// Sample-average compound model in closed form: the mean over years of
// [p0_i + (1 - p0_i) F(x|theta_i)]^n_days.
class SuperstatModel {
 public:
  SuperstatModel(std::vector<SuperstatYear> years, int n_days,
                 double position)
      : years_(std::move(years)), n_days_(n_days), position_(position) {
    if (years_.empty())
      throw std::invalid_argument("SuperstatModel: need at least one year");
    if (n_days_ < 1)
      throw std::invalid_argument("SuperstatModel: n_days must be >= 1");
    if (!(std::isfinite(position_) && position_ >= 0.0))
      throw std::invalid_argument(
          "SuperstatModel: position must be non-negative");
    for (const auto& y : years_) {
      if (!(y.dry_prob >= 0.0 && y.dry_prob <= 1.0))
        throw std::invalid_argument(
            "SuperstatModel: dry_prob must lie in [0, 1]");
      if (y.params.position() != position_)
        throw std::invalid_argument(
            "SuperstatModel: all years must share the position parameter");
    }
  }

  const std::vector<SuperstatYear>& years() const { return years_; }
  int n_days() const { return n_days_; }
  double position() const { return position_; }

  double cdf(double x) const {
    double acc = 0.0;
    for (const auto& y : years_)
      acc += superstat_annual_cdf(y.dry_prob, y.params, n_days_, x);
    return std::clamp(acc / static_cast<double>(years_.size()), 0.0, 1.0);
  }

  // Inverts the CDF. The model's floor is the mass of an all-dry year,
  // mean(p0_i^n_days); p at or below it maps to the position parameter.
  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error(
          "SuperstatModel::quantile: p must lie in (0, 1)");
    const double lo = position_;
    const double flo = cdf(lo) - p;
    if (flo >= 0.0) return lo;

    double all_wet_shape = 0.0;
    for (const auto& y : years_)
      all_wet_shape = std::max(
          all_wet_shape,
          weibull_quantile(y.params,
                           std::pow(p, 1.0 / static_cast<double>(n_days_))));
    double hi = all_wet_shape > lo ? all_wet_shape : lo + 1.0;
    double fhi = cdf(hi) - p;
    int expand = 0;
    while (fhi < 0.0 && expand++ < 200) {
      hi = lo + 2.0 * (hi - lo);
      fhi = cdf(hi) - p;
    }
    if (fhi < 0.0)
      throw NumericError("SuperstatModel::quantile: failed to bracket");

    const auto res = brent_root([&](double x) { return cdf(x) - p; }, lo,
                                hi, flo, fhi, MevdModel::kQuantileTol);
    if (!res.converged)
      throw NumericError(
          "SuperstatModel::quantile: inversion did not converge");
    return res.x;
  }

 private:
  std::vector<SuperstatYear> years_;
  int n_days_;
  double position_;
};

inline ReturnLevelTable return_levels(
    const SuperstatModel& model,
    std::span<const double> periods = kDefaultReturnPeriods) {
  return make_return_level_table(
      "superstat", periods, [&](double p) { return model.quantile(p); });
}

// Largest absolute pointwise deviation between two CDF routes on a grid.
// Returns the deviation and the grid point attaining it.
template <class F, class G>
std::pair<double, double> max_abs_deviation(std::span<const double> grid,
                                            F&& f, G&& g) {
  if (grid.empty())
    throw std::invalid_argument("max_abs_deviation: grid must be non-empty");
  double worst = -1.0, at = grid.front();
  for (double x : grid) {
    const double d = std::fabs(f(x) - g(x));
    if (d > worst) {
      worst = d;
      at = x;
    }
  }
  return {worst, at};
}

// Evaluation grid at Weibull quantiles of evenly spaced probabilities in
// [p_lo, p_hi], covering the body and far tail of the magnitude range.
inline std::vector<double> equivalence_grid(const WeibullParams& params,
                                            std::size_t n_points = 1000,
                                            double p_lo = 0.001,
                                            double p_hi = 0.9999) {
  if (n_points < 2)
    throw std::invalid_argument("equivalence_grid: need at least 2 points");
  if (!(p_lo > 0.0 && p_lo < p_hi && p_hi < 1.0))
    throw std::invalid_argument("equivalence_grid: need 0 < p_lo < p_hi < 1");
  std::vector<double> grid;
  grid.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double p =
        p_lo + (p_hi - p_lo) * static_cast<double>(i) /
                   static_cast<double>(n_points - 1);
    grid.push_back(weibull_quantile(params, p));
  }
  return grid;
}

struct EquivalenceReport {
  double max_abs_dev = 0.0;
  double argmax_x = 0.0;
  bool pass = false;
};

// Checks that the explicit binomial mixture and the closed form agree
// pointwise on the grid. These are two genuinely different evaluation
// paths of one identity, so a disagreement beyond tol means a defect.
inline EquivalenceReport verify_equivalence(std::span<const double> grid,
                                            const BinomialOccurrence& occ,
                                            const WeibullParams& params,
                                            double tol = 1e-10) {
  const auto [dev, at] = max_abs_deviation(
      grid,
      [&](double x) { return mevd_binomial_cdf(occ, params, x); },
      [&](double x) {
        return superstat_annual_cdf(occ.dry_prob(), params, occ.n_days(), x);
      });
  return {dev, at, dev <= tol};
}

// Kolmogorov-Smirnov statistic of a sample against a model CDF:
//   D = max_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|).
template <class CdfFn>
double ks_statistic(CdfFn&& cdf, std::span<const double> sample) {
  if (sample.empty())
    throw std::invalid_argument("ks_statistic: sample must be non-empty");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max({d, std::fabs(hi), std::fabs(lo)});
  }
  return d;
}

struct SuperstatFitOptions {
  int n_days = 365;
  EstimatorMethod estimator = EstimatorMethod::pwm;
  // Width of the final position bracket relative to the initial one.
  double position_rel_tol = 1e-3;
  // Candidate positions live in [0, position_cap_factor * min(maxima)].
  double position_cap_factor = 0.95;
};

struct SuperstatFitResult {
  SuperstatModel model;
  double position = 0.0;
  double ks = 0.0;
  double ks_at_zero = 0.0;
  std::vector<int> years;  // calendar year per model year
  std::vector<SkippedYear> skipped;
};

namespace detail {

struct SuperstatCandidate {
  std::vector<SuperstatYear> years;
  std::vector<int> year_labels;
  std::vector<SkippedYear> skipped;
};

// Builds the closed-form model at one candidate position: per-year wet
// probability from the full event count, magnitude parameters refitted to
// the exceedances of the position.
inline std::optional<SuperstatCandidate> build_superstat_candidate(
    std::span<const YearBlock> blocks, double position,
    const SuperstatFitOptions& opts) {
  SuperstatCandidate cand;
  for (const auto& b : blocks) {
    std::vector<double> exceed;
    exceed.reserve(b.magnitudes.size());
    for (double v : b.magnitudes)
      if (v > position) exceed.push_back(v - position);
    if (exceed.size() < 2) {
      cand.skipped.push_back(
          {b.year, b.n_events(), "too few exceedances of the position"});
      continue;
    }
    const auto fit = fit_weibull(exceed, opts.estimator);
    if (!fit.converged) {
      cand.skipped.push_back(
          {b.year, b.n_events(), "estimator did not converge"});
      continue;
    }
    const double frac_wet = static_cast<double>(b.n_events()) /
                            static_cast<double>(opts.n_days);
    const double dry_prob = std::clamp(1.0 - frac_wet, 0.0, 1.0);
    cand.years.push_back(
        {dry_prob, WeibullParams(fit.params->scale(), fit.params->shape(),
                                 position)});
    cand.year_labels.push_back(b.year);
  }
  if (cand.years.size() < 3) return std::nullopt;
  return cand;
}

}  // namespace detail

// Fits the closed-form model with a shared position parameter chosen to
// minimize the Kolmogorov-Smirnov distance between the model CDF and the
// observed annual maxima. Golden-section over the position bracket, then
// an explicit comparison against position zero, so the result never scores
// worse than the no-position model; ties prefer the smaller position.
inline SuperstatFitResult fit_superstat(std::span<const YearBlock> blocks,
                                        std::span<const double> annual_maxima,
                                        const SuperstatFitOptions& opts = {}) {
  if (opts.n_days < 1)
    throw std::invalid_argument("fit_superstat: n_days must be >= 1");
  if (annual_maxima.empty())
    throw DataError("fit_superstat: no annual maxima");
  for (double m : annual_maxima)
    if (!(std::isfinite(m) && m > 0.0))
      throw DataError("fit_superstat: maxima must be finite and positive");
  std::size_t fittable = 0;
  for (const auto& b : blocks) {
    if (b.n_events() > opts.n_days)
      throw DataError("fit_superstat: a year has more events than n_days");
    if (b.n_events() >= 2) ++fittable;
  }
  if (fittable < 3)
    throw DataError(
        "fit_superstat: needs at least 3 years with 2 or more events");

  const auto score = [&](double position) -> double {
    const auto cand =
        detail::build_superstat_candidate(blocks, position, opts);
    if (!cand) return std::numeric_limits<double>::infinity();
    SuperstatModel model(cand->years, opts.n_days, position);
    return ks_statistic([&](double x) { return model.cdf(x); },
                        annual_maxima);
  };

  const double ks_zero = score(0.0);

  const double cap = opts.position_cap_factor *
                     *std::min_element(annual_maxima.begin(),
                                       annual_maxima.end());
  double best_position = 0.0;
  double best_ks = ks_zero;
  if (cap > 0.0) {
    const auto opt =
        golden_section_min(score, 0.0, cap, opts.position_rel_tol);
    if (opt.value < best_ks) {
      best_position = opt.x;
      best_ks = opt.value;
    }
  }

  if (!std::isfinite(best_ks))
    throw NumericError(
        "fit_superstat: no position admits at least 3 usable years");

  auto cand = detail::build_superstat_candidate(blocks, best_position, opts);
  if (!cand)
    throw NumericError("fit_superstat: chosen position lost its years");
  SuperstatModel model(cand->years, opts.n_days, best_position);
  return {std::move(model),        best_position,
          best_ks,                 ks_zero,
          std::move(cand->year_labels), std::move(cand->skipped)};
}

}  // namespace mev

#endif  // MEV_SUPERSTAT_HPP
