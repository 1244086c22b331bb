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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mev/distributions.hpp"
#include "mev/errors.hpp"
#include "mev/simulator.hpp"
#include "mev/superstat.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("splitmix64 matches the published sequence", "[simulator]") {
  // Outputs 1 and 2 of the generator started from state 0.
  REQUIRE(mev::splitmix64(0, 0) == 0xE220A8397B1DCDAFULL);
  REQUIRE(mev::splitmix64(0, 1) == 0x6E789E6AA1B965F4ULL);
  REQUIRE(mev::splitmix64(42, 0) == 0xBDD732262FEB6E95ULL);

  REQUIRE(mev::splitmix64(7, 3) == mev::splitmix64(7, 3));
  REQUIRE(mev::splitmix64(7, 3) != mev::splitmix64(7, 4));
  REQUIRE(mev::splitmix64(7, 3) != mev::splitmix64(8, 3));
}

TEST_CASE("uniform draws live strictly inside the unit interval",
          "[simulator]") {
  std::mt19937_64 rng(99);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = mev::next_uniform(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  REQUIRE(lo > 0.0);
  REQUIRE(hi < 1.0);
  REQUIRE_THAT(sum / n, WithinAbs(0.5, 0.005));

  // The mapping from raw generator output is pinned: the same engine
  // state yields ((word >> 11) + 0.5) * 2^-53.
  std::mt19937_64 a(1234), b(1234);
  const double expect =
      (static_cast<double>(b() >> 11) + 0.5) * 0x1.0p-53;
  REQUIRE(mev::next_uniform(a) == expect);
}

TEST_CASE("an always-dry process produces only zeros", "[simulator]") {
  const auto occ = mev::OccurrenceSpec::binomial(1.0, 365);
  const auto hyper = mev::HyperParams::fixed(mev::WeibullParams(9.2, 0.78));
  const auto station = mev::simulate_station(occ, hyper, 5, 31337);
  for (const auto& year : station.daily) {
    REQUIRE(year.size() == 365);
    REQUIRE(std::all_of(year.begin(), year.end(),
                        [](double v) { return v == 0.0; }));
  }
  const auto summaries = mev::simulate_annual_summaries(occ, hyper, 5, 31337);
  const auto maxima = mev::annual_maxima_of(summaries);
  REQUIRE(maxima.dry_years == 5);
  REQUIRE(maxima.values.empty());
}

TEST_CASE("simulation is reproducible and seed-sensitive", "[simulator]") {
  const auto occ = mev::OccurrenceSpec::binomial(0.7, 365);
  const mev::HyperParams hyper(9.2, 0.25, 0.78, 0.08);
  const auto a = mev::simulate_station(occ, hyper, 10, 2024);
  const auto b = mev::simulate_station(occ, hyper, 10, 2024);
  const auto c = mev::simulate_station(occ, hyper, 10, 2025);

  REQUIRE(a.daily == b.daily);
  REQUIRE(a.daily != c.daily);
  for (std::size_t y = 0; y < a.n_years(); ++y) {
    REQUIRE(a.year_params[y].scale() == b.year_params[y].scale());
    REQUIRE(a.year_params[y].shape() == b.year_params[y].shape());
  }
}

TEST_CASE("streaming summaries agree bit for bit with the full record",
          "[simulator]") {
  const auto occ = mev::OccurrenceSpec::markov1(0.25, 0.55);
  const mev::HyperParams hyper(9.2, 0.25, 0.78, 0.08);
  const auto station = mev::simulate_station(occ, hyper, 50, 555);
  const auto summaries =
      mev::simulate_annual_summaries(occ, hyper, 50, 555);

  REQUIRE(summaries.size() == station.n_years());
  for (std::size_t y = 0; y < station.n_years(); ++y) {
    int events = 0;
    double mx = 0.0;
    for (double v : station.daily[y]) {
      if (v > 0.0) {
        ++events;
        mx = std::max(mx, v);
      }
    }
    REQUIRE(summaries[y].n_events == events);
    REQUIRE(summaries[y].maximum == mx);
    REQUIRE(summaries[y].params.scale() == station.year_params[y].scale());
    REQUIRE(summaries[y].params.shape() == station.year_params[y].shape());
  }
}

TEST_CASE("station blocks mirror the daily record", "[simulator]") {
  const auto occ = mev::OccurrenceSpec::binomial(0.7, 365);
  const mev::HyperParams hyper(9.2, 0.25, 0.78, 0.08);
  const auto station = mev::simulate_station(occ, hyper, 20, 777);
  const auto blocks = mev::station_year_blocks(station, 1901);

  REQUIRE(blocks.size() == 20);
  REQUIRE(blocks.front().year == 1901);
  REQUIRE(blocks.back().year == 1920);
  const auto summaries = mev::simulate_annual_summaries(occ, hyper, 20, 777);
  for (std::size_t y = 0; y < blocks.size(); ++y) {
    REQUIRE(blocks[y].n_observed_days == 365);
    REQUIRE(blocks[y].n_events() == summaries[y].n_events);
    const auto mx = mev::block_maximum(blocks[y]);
    if (summaries[y].n_events > 0) {
      REQUIRE(mx.has_value());
      REQUIRE(*mx == summaries[y].maximum);
    } else {
      REQUIRE_FALSE(mx.has_value());
    }
  }
}

TEST_CASE("binomial occurrence hits its expected wet-day count",
          "[simulator]") {
  const auto occ = mev::OccurrenceSpec::binomial(0.7, 365);
  const auto hyper = mev::HyperParams::fixed(mev::WeibullParams(9.2, 0.78));
  const auto summaries =
      mev::simulate_annual_summaries(occ, hyper, 1000, 4242);
  double mean = 0.0;
  for (const auto& s : summaries) mean += s.n_events;
  mean /= 1000.0;
  // 365 * 0.3 = 109.5 wet days; three standard errors is about 0.83.
  REQUIRE_THAT(mean, WithinAbs(109.5, 1.0));
}

TEST_CASE("markov occurrence with equal transitions is memoryless",
          "[simulator]") {
  // p01 = p11 makes every day wet with the same probability, so the
  // stationary initial probability equals it too.
  const auto occ = mev::OccurrenceSpec::markov1(0.3, 0.3);
  REQUIRE_THAT(occ.p_init(), WithinRel(0.3, 1e-12));

  const auto hyper = mev::HyperParams::fixed(mev::WeibullParams(9.2, 0.78));
  const auto summaries =
      mev::simulate_annual_summaries(occ, hyper, 1000, 20107);
  double mean = 0.0;
  for (const auto& s : summaries) mean += s.n_events;
  mean /= 1000.0;
  REQUIRE_THAT(mean, WithinAbs(365.0 * 0.3, 1.0));
}

TEST_CASE("markov occurrence settles at the stationary wet fraction",
          "[simulator]") {
  const auto occ = mev::OccurrenceSpec::markov1(0.2, 0.6, -1.0, 1000000);
  REQUIRE_THAT(occ.p_init(), WithinRel(1.0 / 3.0, 1e-12));

  const auto hyper = mev::HyperParams::fixed(mev::WeibullParams(9.2, 0.78));
  const auto summaries = mev::simulate_annual_summaries(occ, hyper, 1, 6001);
  const double frac = summaries[0].n_events / 1000000.0;
  // Autocorrelation p11 - p01 = 0.4 inflates the variance of the wet
  // fraction by (1 + rho) / (1 - rho); three sigma is about 2.2e-3.
  REQUIRE_THAT(frac, WithinAbs(1.0 / 3.0, 2.2e-3));
}

TEST_CASE("simulated maxima converge to the closed-form cdf", "[simulator]") {
  const mev::WeibullParams theta(9.2, 0.78);
  const auto occ = mev::OccurrenceSpec::binomial(0.7, 365);
  const auto hyper = mev::HyperParams::fixed(theta);
  const auto cdf = [&](double x) {
    return mev::superstat_annual_cdf(0.7, theta, 365, x);
  };

  double prev = 1.0;
  for (int years : {1000, 10000, 100000}) {
    const auto summaries =
        mev::simulate_annual_summaries(occ, hyper, years, 909090);
    const auto maxima = mev::annual_maxima_of(summaries);
    REQUIRE(maxima.dry_years == 0);  // 0.7^365 is vanishingly small
    const double d = mev::ks_statistic(cdf, maxima.values);
    REQUIRE(d < oracles::kKolmogorov99 /
                    std::sqrt(static_cast<double>(years)));
    REQUIRE(d < prev);
    prev = d;
  }
}

TEST_CASE("hyper parameter draws follow the prescribed spreads",
          "[simulator]") {
  const mev::HyperParams hyper(9.2, 0.25, 0.78, 0.08);
  std::mt19937_64 rng(13579);
  std::vector<double> scales, shapes;
  for (int i = 0; i < 20000; ++i) {
    const auto p = hyper.draw(rng);
    scales.push_back(p.scale());
    shapes.push_back(p.shape());
    REQUIRE(p.shape() > 0.0);
    REQUIRE(p.position() == 0.0);
  }
  std::sort(scales.begin(), scales.end());
  const double median_scale = scales[scales.size() / 2];
  REQUIRE_THAT(median_scale, WithinRel(9.2, 0.02));
  double mean_shape = 0.0;
  for (double w : shapes) mean_shape += w;
  mean_shape /= static_cast<double>(shapes.size());
  REQUIRE_THAT(mean_shape, WithinRel(0.78, 0.02));
}

TEST_CASE("zero spreads pin the parameters and consume no randomness",
          "[simulator]") {
  const auto hyper = mev::HyperParams::fixed(mev::WeibullParams(9.2, 0.78));
  std::mt19937_64 rng(31415), untouched(31415);
  const auto p = hyper.draw(rng);
  REQUIRE(p.scale() == 9.2);
  REQUIRE(p.shape() == 0.78);
  REQUIRE(rng() == untouched());  // same next output: nothing consumed
}

TEST_CASE("oracle cdf demands a long record", "[simulator]") {
  std::vector<double> few(99, 1.0);
  REQUIRE_THROWS_AS(mev::oracle_cdf(few), std::invalid_argument);

  const auto occ = mev::OccurrenceSpec::binomial(0.7, 365);
  const auto hyper = mev::HyperParams::fixed(mev::WeibullParams(9.2, 0.78));
  const auto summaries =
      mev::simulate_annual_summaries(occ, hyper, 500, 112233);
  const auto maxima = mev::annual_maxima_of(summaries);
  const auto cdf = mev::oracle_cdf(maxima.values);
  const double med = cdf.quantile(0.5);
  REQUIRE(med > 0.0);
  REQUIRE_THAT(cdf(med), WithinAbs(0.5, 0.01));
}

TEST_CASE("occurrence and hyper specs validate their inputs", "[simulator]") {
  REQUIRE_THROWS_AS(mev::OccurrenceSpec::binomial(-0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::OccurrenceSpec::binomial(1.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::OccurrenceSpec::binomial(0.5, 0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::OccurrenceSpec::markov1(-0.2, 0.5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::OccurrenceSpec::markov1(0.2, 1.5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::OccurrenceSpec::markov1(0.2, 0.5, 1.5),
                    std::invalid_argument);

  REQUIRE_THROWS_AS(mev::HyperParams(0.0, 0.25, 0.78, 0.08),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::HyperParams(9.2, -0.1, 0.78, 0.08),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::HyperParams(9.2, 0.25, -0.78, 0.08),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::HyperParams(9.2, 0.25, 0.78, -0.08),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::HyperParams(9.2, 0.25, 0.78, 0.08, -1.0),
                    std::invalid_argument);

  REQUIRE_THROWS_AS(
      mev::simulate_station(mev::OccurrenceSpec::binomial(0.5),
                            mev::HyperParams::fixed({1.0, 1.0}), 0, 1),
      std::invalid_argument);
}
