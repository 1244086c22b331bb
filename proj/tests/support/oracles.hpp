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

// Test-side reference implementations, kept independent of the library
// code paths they are used to check.

#ifndef MEV_TESTS_SUPPORT_ORACLES_HPP
#define MEV_TESTS_SUPPORT_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracles {

// Uniform in (0, 1) from raw mt19937_64 bits; a data generator for
// property tests, unrelated to the library's sampling scheme.
inline double uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform(rng);
}

// Composite Simpson integration.
template <class Fn>
double simpson(Fn&& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Weibull density written out directly for quadrature oracles.
inline double weibull_density(double scale, double shape, double position,
                              double x) {
  if (x <= position) return 0.0;
  const double y = (x - position) / scale;
  return (shape / scale) * std::pow(y, shape - 1.0) *
         std::exp(-std::pow(y, shape));
}

// Binomial pmf table built by the ratio recurrence
//   pmf(n+1) = pmf(n) * ((N - n) / (n + 1)) * ((1 - p0) / p0),
// anchored at pmf(0) = p0^N. Valid for p0 in (0, 1).
inline std::vector<double> binomial_pmf_table(int n_days, double p0) {
  std::vector<double> pmf(static_cast<std::size_t>(n_days) + 1);
  pmf[0] = std::pow(p0, n_days);
  const double r = (1.0 - p0) / p0;
  for (int n = 0; n < n_days; ++n)
    pmf[static_cast<std::size_t>(n) + 1] =
        pmf[static_cast<std::size_t>(n)] *
        (static_cast<double>(n_days - n) / (n + 1.0)) * r;
  return pmf;
}

// One-sample Kolmogorov-Smirnov critical values D = K / sqrt(n).
inline constexpr double kKolmogorov95 = 1.35809863932;
inline constexpr double kKolmogorov99 = 1.62762361152;
inline constexpr double kKolmogorov999 = 1.9494746035;

}  // namespace oracles

#endif  // MEV_TESTS_SUPPORT_ORACLES_HPP
