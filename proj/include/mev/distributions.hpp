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

#ifndef MEV_DISTRIBUTIONS_HPP
#define MEV_DISTRIBUTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mev/numerics.hpp"

namespace mev {

// Three-parameter Weibull for daily event magnitudes:
//   F(x) = 1 - exp(-((x - position) / scale)^shape),  x > position.
class WeibullParams {
 public:
  WeibullParams(double scale, double shape, double position = 0.0)
      : scale_(scale), shape_(shape), position_(position) {
    if (!(std::isfinite(scale) && scale > 0.0))
      throw std::invalid_argument("WeibullParams: scale must be positive");
    if (!(std::isfinite(shape) && shape > 0.0))
      throw std::invalid_argument("WeibullParams: shape must be positive");
    if (!(std::isfinite(position) && position >= 0.0))
      throw std::invalid_argument(
          "WeibullParams: position must be non-negative");
  }

  double scale() const { return scale_; }
  double shape() const { return shape_; }
  double position() const { return position_; }

  friend bool operator==(const WeibullParams&, const WeibullParams&) = default;

 private:
  double scale_;
  double shape_;
  double position_;
};

// ((x - position) / scale)^shape, clamped to 0 at and below the position.
inline double weibull_exponent(const WeibullParams& p, double x) {
  if (!(x > p.position())) return 0.0;
  return std::pow((x - p.position()) / p.scale(), p.shape());
}

inline double weibull_survival(const WeibullParams& p, double x) {
  return std::exp(-weibull_exponent(p, x));
}

inline double weibull_cdf(const WeibullParams& p, double x) {
  if (!(x > p.position())) return 0.0;
  return -std::expm1(-weibull_exponent(p, x));
}

inline double weibull_log_cdf(const WeibullParams& p, double x) {
  if (!(x > p.position())) return -std::numeric_limits<double>::infinity();
  return log1mexp(weibull_exponent(p, x));
}

// Inverse CDF. Defined on [0, 1); p = 0 maps to the position parameter.
inline double weibull_quantile(const WeibullParams& p, double prob) {
  if (!(prob >= 0.0 && prob < 1.0))
    throw std::domain_error("weibull_quantile: p must lie in [0, 1)");
  if (prob == 0.0) return p.position();
  return p.position() +
         p.scale() * std::pow(-std::log1p(-prob), 1.0 / p.shape());
}

// Generalized extreme value distribution of annual maxima, in the
// parameterization where shape > 0 is heavy-tailed:
//   F(x) = exp(-(1 + shape * (x - location) / scale)^(-1/shape)).
class GevParams {
 public:
  GevParams(double location, double scale, double shape)
      : location_(location), scale_(scale), shape_(shape) {
    if (!std::isfinite(location))
      throw std::invalid_argument("GevParams: location must be finite");
    if (!(std::isfinite(scale) && scale > 0.0))
      throw std::invalid_argument("GevParams: scale must be positive");
    if (!std::isfinite(shape))
      throw std::invalid_argument("GevParams: shape must be finite");
  }

  double location() const { return location_; }
  double scale() const { return scale_; }
  double shape() const { return shape_; }

  friend bool operator==(const GevParams&, const GevParams&) = default;

 private:
  double location_;
  double scale_;
  double shape_;
};

// |shape| below this evaluates through the Gumbel limit form.
inline constexpr double kGevGumbelEps = 1e-9;

inline double gev_cdf(const GevParams& p, double x) {
  const double z = (x - p.location()) / p.scale();
  if (std::fabs(p.shape()) < kGevGumbelEps) return std::exp(-std::exp(-z));
  const double t = 1.0 + p.shape() * z;
  if (t <= 0.0) return p.shape() > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::pow(t, -1.0 / p.shape()));
}

inline double gev_quantile(const GevParams& p, double prob) {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::domain_error("gev_quantile: p must lie in (0, 1)");
  const double g = -std::log(prob);
  if (std::fabs(p.shape()) < kGevGumbelEps)
    return p.location() - p.scale() * std::log(g);
  return p.location() +
         p.scale() * (std::pow(g, -p.shape()) - 1.0) / p.shape();
}

// Number of wet days out of n_days when each day is independently dry
// with probability dry_prob:
//   P(n wet) = C(n_days, n) dry_prob^(n_days - n) (1 - dry_prob)^n.
class BinomialOccurrence {
 public:
  BinomialOccurrence(int n_days, double dry_prob)
      : n_days_(n_days), dry_prob_(dry_prob) {
    if (n_days < 1)
      throw std::invalid_argument("BinomialOccurrence: n_days must be >= 1");
    if (!(dry_prob >= 0.0 && dry_prob <= 1.0))
      throw std::invalid_argument(
          "BinomialOccurrence: dry_prob must lie in [0, 1]");
  }

  int n_days() const { return n_days_; }
  double dry_prob() const { return dry_prob_; }

 private:
  int n_days_;
  double dry_prob_;
};

inline double binomial_log_pmf(const BinomialOccurrence& occ, int n_wet) {
  const int n_days = occ.n_days();
  if (n_wet < 0 || n_wet > n_days)
    throw std::domain_error("binomial_log_pmf: count outside [0, n_days]");
  const double p0 = occ.dry_prob();
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (p0 == 0.0) return n_wet == n_days ? 0.0 : neg_inf;
  if (p0 == 1.0) return n_wet == 0 ? 0.0 : neg_inf;
  return log_binomial_coefficient(n_days, n_wet) +
         (n_days - n_wet) * std::log(p0) + n_wet * std::log1p(-p0);
}

inline double binomial_pmf(const BinomialOccurrence& occ, int n_wet) {
  return std::exp(binomial_log_pmf(occ, n_wet));
}

// Step empirical CDF with Weibull plotting positions rank / (n + 1), so
// no observation sits at probability 0 or 1.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> sample)
      : sorted_(std::move(sample)) {
    if (sorted_.empty())
      throw std::invalid_argument("EmpiricalCdf: sample must be non-empty");
    for (double v : sorted_)
      if (!std::isfinite(v))
        throw std::invalid_argument("EmpiricalCdf: sample must be finite");
    std::sort(sorted_.begin(), sorted_.end());
  }

  double operator()(double x) const {
    const auto rank =
        std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(rank) /
           (static_cast<double>(sorted_.size()) + 1.0);
  }

  // Smallest sample value whose plotting position reaches p.
  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error("EmpiricalCdf::quantile: p must lie in (0, 1)");
    const auto n = static_cast<std::ptrdiff_t>(sorted_.size());
    auto k = static_cast<std::ptrdiff_t>(
        std::ceil(p * (static_cast<double>(n) + 1.0)));
    k = std::clamp<std::ptrdiff_t>(k, 1, n);
    return sorted_[static_cast<std::size_t>(k - 1)];
  }

  const std::vector<double>& sorted() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

}  // namespace mev

#endif  // MEV_DISTRIBUTIONS_HPP
