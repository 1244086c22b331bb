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

#ifndef MEV_NUMERICS_HPP
#define MEV_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "mev/errors.hpp"

namespace mev {

// log(1 - exp(-z)) for z >= 0, split at ln 2 to avoid cancellation on
// either side. z <= 0 maps to -infinity (a CDF of zero).
inline double log1mexp(double z) {
  if (z <= 0.0) return -std::numeric_limits<double>::infinity();
  if (z <= std::numbers::ln2) return std::log(-std::expm1(-z));
  return std::log1p(-std::exp(-z));
}

inline double log_binomial_coefficient(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

struct RootResult {
  double x;
  double fx;
  int iterations;
  bool converged;
};

// Brent's method on a bracketing interval [a, b] with f(a), f(b) already
// evaluated. Stops when |f| <= f_tol or the interval collapses to
// floating-point resolution.
template <class Fn>
RootResult brent_root(Fn&& f, double a, double b, double fa, double fb,
                      double f_tol, int max_iter = 200) {
  if (fa == 0.0) return {a, fa, 0, true};
  if (fb == 0.0) return {b, fb, 0, true};
  if ((fa > 0.0) == (fb > 0.0))
    throw NumericError("brent_root: endpoints do not bracket a root");

  if (std::fabs(fa) < std::fabs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a, s = b, fs = fb;
  bool bisected = true;
  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::fabs(fb) <= f_tol) return {b, fb, it, true};
    const double xtol = 2.0 * std::numeric_limits<double>::epsilon() *
                        std::max(1.0, std::fabs(b));
    if (std::fabs(b - a) <= xtol) break;

    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) +
          b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }

    const double edge = (3.0 * a + b) / 4.0;
    const bool out_of_range =
        !(s > std::min(edge, b) && s < std::max(edge, b));
    const bool too_slow = bisected
                              ? std::fabs(s - b) >= std::fabs(b - c) / 2.0
                              : std::fabs(s - b) >= std::fabs(c - d) / 2.0;
    const bool stalled = bisected ? std::fabs(b - c) < xtol
                                  : std::fabs(c - d) < xtol;
    if (out_of_range || too_slow || stalled) {
      s = 0.5 * (a + b);
      bisected = true;
    } else {
      bisected = false;
    }

    fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if ((fa > 0.0) != (fs > 0.0)) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::fabs(fa) < std::fabs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
  }
  return {b, fb, it, std::fabs(fb) <= f_tol};
}

struct MinResult {
  double x;
  double value;
  int iterations;
};

// Golden-section minimization on [lo, hi]. Terminates once the interval
// shrinks below rel_tol times the initial width. Ties between the two
// interior probes keep the left one, so plateaus resolve toward lo.
template <class Fn>
MinResult golden_section_min(Fn&& f, double lo, double hi,
                             double rel_tol = 1e-3, int max_iter = 200) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("golden_section_min: bad interval");
  constexpr double invphi = 0.6180339887498949;
  const double width_target =
      rel_tol * std::max(hi - lo, std::numeric_limits<double>::epsilon());
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (it < max_iter && (b - a) > width_target) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    ++it;
  }
  if (f1 <= f2) return {x1, f1, it};
  return {x2, f2, it};
}

}  // namespace mev

#endif  // MEV_NUMERICS_HPP
