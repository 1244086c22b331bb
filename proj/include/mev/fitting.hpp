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

#ifndef MEV_FITTING_HPP
#define MEV_FITTING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mev/distributions.hpp"
#include "mev/errors.hpp"

namespace mev {

enum class EstimatorMethod { pwm, mle, lmom };

inline std::string_view to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::pwm: return "pwm";
    case EstimatorMethod::mle: return "mle";
    case EstimatorMethod::lmom: return "lmom";
  }
  return "unknown";
}

inline std::optional<EstimatorMethod> estimator_from_string(
    std::string_view name) {
  if (name == "pwm") return EstimatorMethod::pwm;
  if (name == "mle") return EstimatorMethod::mle;
  if (name == "lmom") return EstimatorMethod::lmom;
  return std::nullopt;
}

struct WeibullFitReport {
  std::optional<WeibullParams> params;
  EstimatorMethod method = EstimatorMethod::pwm;
  std::size_t n_used = 0;
  bool converged = false;
  std::optional<double> log_likelihood;
};

struct GevFitReport {
  std::optional<GevParams> params;
  EstimatorMethod method = EstimatorMethod::lmom;
  std::size_t n_used = 0;
  bool converged = false;
};

inline double weibull_log_likelihood(const WeibullParams& p,
                                     std::span<const double> sample) {
  const double logC = std::log(p.scale());
  const double logw = std::log(p.shape());
  double ll = 0.0;
  for (double x : sample) {
    const double y = (x - p.position()) / p.scale();
    if (!(y > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += logw - logC + (p.shape() - 1.0) * std::log(y) -
          std::pow(y, p.shape());
  }
  return ll;
}

namespace detail {

inline std::vector<double> sorted_positive_sample(
    std::span<const double> sample, const char* who) {
  if (sample.size() < 2)
    throw std::invalid_argument(std::string(who) +
                                ": need at least 2 values");
  std::vector<double> xs(sample.begin(), sample.end());
  for (double v : xs)
    if (!(std::isfinite(v) && v > 0.0))
      throw std::invalid_argument(std::string(who) +
                                  ": values must be finite and positive");
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace detail

// Probability-weighted moments for the two-parameter Weibull. With
// a_r = E[X (1-F(X))^r] = scale * Gamma(1 + 1/shape) / (r+1)^(1 + 1/shape),
// the ratio a1/a0 = 2^-(1 + 1/shape) gives
//   shape = 1 / (log2(a0/a1) - 1),  scale = a0 / Gamma(1 + 1/shape).
// Sample versions use the unbiased estimators on the order statistics.
// A ratio at or above 1/2 cannot come from any Weibull; the report comes
// back non-converged.
inline WeibullFitReport fit_weibull_pwm(std::span<const double> sample) {
  const auto xs = detail::sorted_positive_sample(sample, "fit_weibull_pwm");
  const auto n = static_cast<double>(xs.size());

  double a0 = 0.0, a1 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    a0 += xs[i];
    a1 += xs[i] * (n - static_cast<double>(i + 1));
  }
  a0 /= n;
  a1 /= n * (n - 1.0);

  WeibullFitReport report;
  report.method = EstimatorMethod::pwm;
  report.n_used = xs.size();

  const double ratio = a1 / a0;
  if (!(ratio > 0.0 && ratio < 0.5)) return report;

  const double shape = 1.0 / (std::log2(a0 / a1) - 1.0);
  const double scale = a0 / std::tgamma(1.0 + 1.0 / shape);
  if (!(std::isfinite(shape) && shape > 0.0 && std::isfinite(scale) &&
        scale > 0.0))
    return report;

  report.params = WeibullParams(scale, shape);
  report.converged = true;
  report.log_likelihood = weibull_log_likelihood(*report.params, sample);
  return report;
}

// Maximum likelihood for the two-parameter Weibull via the profile score
//   g(shape) = sum x^shape ln x / sum x^shape - 1/shape - mean(ln x),
// which is strictly increasing in shape. Newton steps guarded by a
// maintained bracket; values are scaled by the sample maximum so x^shape
// cannot overflow.
inline WeibullFitReport fit_weibull_mle(std::span<const double> sample) {
  const auto xs = detail::sorted_positive_sample(sample, "fit_weibull_mle");
  const auto n = static_cast<double>(xs.size());

  WeibullFitReport report;
  report.method = EstimatorMethod::mle;
  report.n_used = xs.size();

  const double xmax = xs.back();
  if (xs.front() == xmax) return report;  // all values equal

  std::vector<double> u(xs.size()), logu(xs.size());
  double mean_logx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    u[i] = xs[i] / xmax;
    logu[i] = std::log(u[i]);
    mean_logx += std::log(xs[i]);
  }
  mean_logx /= n;
  const double log_xmax = std::log(xmax);

  // Score and derivative in terms of u = x/xmax: the weighted mean of
  // ln x is (sum u^w ln u / sum u^w) + ln xmax.
  const auto score = [&](double w, double& deriv) {
    double sw = 0.0, swl = 0.0, swl2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double uw = std::pow(u[i], w);
      sw += uw;
      swl += uw * logu[i];
      swl2 += uw * logu[i] * logu[i];
    }
    const double m1 = swl / sw;
    deriv = (swl2 / sw - m1 * m1) + 1.0 / (w * w);
    return m1 + log_xmax - 1.0 / w - mean_logx;
  };

  const double score_tol = 1e-10;
  const int max_iter = 200;

  double w = 1.0;
  {
    const auto seed = fit_weibull_pwm(sample);
    if (seed.converged) w = seed.params->shape();
  }

  double lo = w, hi = w, deriv = 0.0;
  double g = score(w, deriv);
  double flo = g, fhi = g;
  int expand = 0;
  while (flo > 0.0 && expand++ < 120) {
    lo /= 2.0;
    flo = score(lo, deriv);
  }
  expand = 0;
  while (fhi < 0.0 && expand++ < 120) {
    hi *= 2.0;
    fhi = score(hi, deriv);
  }
  if (flo > 0.0 || fhi < 0.0) return report;

  g = score(w, deriv);
  bool converged = std::fabs(g) <= score_tol;
  for (int it = 0; it < max_iter && !converged; ++it) {
    if (g > 0.0)
      hi = w;
    else
      lo = w;
    double next = w - g / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    w = next;
    g = score(w, deriv);
    converged = std::fabs(g) <= score_tol;
  }
  if (!converged || !(w > 0.0) || !std::isfinite(w)) return report;

  double sw = 0.0;
  for (double ui : u) sw += std::pow(ui, w);
  const double scale = xmax * std::pow(sw / n, 1.0 / w);
  if (!(std::isfinite(scale) && scale > 0.0)) return report;

  report.params = WeibullParams(scale, w);
  report.converged = true;
  report.log_likelihood = weibull_log_likelihood(*report.params, sample);
  return report;
}

inline WeibullFitReport fit_weibull(std::span<const double> sample,
                                    EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::pwm: return fit_weibull_pwm(sample);
    case EstimatorMethod::mle: return fit_weibull_mle(sample);
    default:
      throw std::invalid_argument(
          "fit_weibull: estimator must be pwm or mle");
  }
}

// L-moment fit of the generalized extreme value distribution to a sample
// of annual maxima, using the rational approximation for the shape driven
// by the L-skewness, then closed forms for scale and location. The Gumbel
// branch handles |k| under 1e-8.
inline GevFitReport fit_gev_annual_maxima(std::span<const double> maxima) {
  if (maxima.size() < 5)
    throw std::invalid_argument(
        "fit_gev_annual_maxima: need at least 5 maxima");
  std::vector<double> xs(maxima.begin(), maxima.end());
  for (double v : xs)
    if (!std::isfinite(v))
      throw std::invalid_argument(
          "fit_gev_annual_maxima: maxima must be finite");
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());

  GevFitReport report;
  report.method = EstimatorMethod::lmom;
  report.n_used = xs.size();

  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t idx = 0; idx < xs.size(); ++idx) {
    const auto i = static_cast<double>(idx + 1);
    b0 += xs[idx];
    b1 += xs[idx] * (i - 1.0);
    b2 += xs[idx] * (i - 1.0) * (i - 2.0);
  }
  b0 /= n;
  b1 /= n * (n - 1.0);
  b2 /= n * (n - 1.0) * (n - 2.0);

  const double l1 = b0;
  const double l2 = 2.0 * b1 - b0;
  const double l3 = 6.0 * b2 - 6.0 * b1 + b0;
  if (!(l2 > 0.0)) return report;  // degenerate sample

  const double t3 = l3 / l2;
  const double c =
      2.0 / (3.0 + t3) - std::numbers::ln2 / std::log(3.0);
  const double k = 7.8590 * c + 2.9554 * c * c;

  constexpr double euler_gamma = 0.5772156649015329;
  double location, scale, shape;
  if (std::fabs(k) < 1e-8) {
    scale = l2 / std::numbers::ln2;
    location = l1 - euler_gamma * scale;
    shape = 0.0;
  } else {
    const double gamma1k = std::tgamma(1.0 + k);
    scale = l2 * k / ((1.0 - std::pow(2.0, -k)) * gamma1k);
    location = l1 - scale * (1.0 - gamma1k) / k;
    shape = -k;
  }
  if (!(std::isfinite(location) && std::isfinite(scale) && scale > 0.0 &&
        std::isfinite(shape)))
    return report;

  report.params = GevParams(location, scale, shape);
  report.converged = true;
  return report;
}

}  // namespace mev

#endif  // MEV_FITTING_HPP
