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

#include <cmath>
#include <random>
#include <vector>

#include "mev/distributions.hpp"
#include "mev/errors.hpp"
#include "mev/ingest.hpp"
#include "mev/mevd.hpp"
#include "mev/superstat.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("superstat cdf collapses to the dry atom below the position",
          "[superstat]") {
  const mev::WeibullParams p(9.2, 0.78);
  const double atom = std::pow(0.7, 365);
  REQUIRE_THAT(mev::superstat_annual_cdf(0.7, p, 365, 0.0),
               WithinRel(atom, 1e-12));
  REQUIRE_THAT(mev::superstat_annual_cdf(0.7, p, 365, -5.0),
               WithinRel(atom, 1e-12));

  const mev::WeibullParams shifted(2.0, 1.0, 3.0);
  REQUIRE_THAT(mev::superstat_annual_cdf(0.5, shifted, 10, 3.0),
               WithinRel(std::pow(0.5, 10), 1e-12));
}

TEST_CASE("superstat cdf with no dry days is the plain power", "[superstat]") {
  const mev::WeibullParams p(9.2, 0.78);
  for (double x : {0.5, 5.0, 40.0, 120.0}) {
    REQUIRE(mev::superstat_annual_cdf(0.0, p, 365, x) ==
            mev::annual_max_cdf(p, 365, x));
  }
}

TEST_CASE("superstat cdf matches a frozen reference value", "[superstat]") {
  const mev::WeibullParams p(9.2, 0.78);
  REQUIRE_THAT(mev::superstat_annual_cdf(0.7, p, 365, 100.0),
               WithinRel(0.83818552181794114497, 1e-13));
}

TEST_CASE("single-year superstat model equals the annual formula",
          "[superstat]") {
  const mev::WeibullParams p(4.0, 1.2);
  const mev::SuperstatModel model({{0.6, p}}, 365, 0.0);
  for (double x : {0.1, 2.0, 15.0, 60.0}) {
    REQUIRE(model.cdf(x) == mev::superstat_annual_cdf(0.6, p, 365, x));
  }
}

TEST_CASE("binomial mixture equals the closed form", "[superstat]") {
  std::mt19937_64 rng(2718);
  for (int rep = 0; rep < 20; ++rep) {
    const mev::WeibullParams p(oracles::uniform_in(rng, 1.0, 20.0),
                               oracles::uniform_in(rng, 0.5, 1.5));
    const double p0 = oracles::uniform_in(rng, 0.05, 0.95);
    const mev::BinomialOccurrence occ(30, p0);
    for (double prob : {0.05, 0.3, 0.7, 0.97}) {
      const double x = mev::weibull_quantile(p, prob);
      REQUIRE_THAT(mev::mevd_binomial_cdf(occ, p, x),
                   WithinAbs(mev::superstat_annual_cdf(p0, p, 30, x), 1e-12));
    }
  }
}

TEST_CASE("binomial mixture edge cases", "[superstat]") {
  const mev::WeibullParams p(5.0, 0.9);
  // Always dry: the maximum is vacuous and the CDF is 1 everywhere.
  const mev::BinomialOccurrence always_dry(20, 1.0);
  REQUIRE(mev::mevd_binomial_cdf(always_dry, p, 0.0) == 1.0);
  REQUIRE(mev::mevd_binomial_cdf(always_dry, p, 100.0) == 1.0);

  // A single day is a two-point mixture, linear in F.
  const mev::BinomialOccurrence one_day(1, 0.4);
  for (double x : {0.5, 3.0, 12.0}) {
    REQUIRE_THAT(mev::mevd_binomial_cdf(one_day, p, x),
                 WithinRel(0.4 + 0.6 * mev::weibull_cdf(p, x), 1e-13));
  }
}

TEST_CASE("equivalence grid spans the requested quantiles", "[superstat]") {
  const mev::WeibullParams p(9.2, 0.78);
  const auto grid = mev::equivalence_grid(p, 1000);
  REQUIRE(grid.size() == 1000);
  REQUIRE(grid.front() == mev::weibull_quantile(p, 0.001));
  REQUIRE(grid.back() == mev::weibull_quantile(p, 0.9999));
  for (std::size_t i = 1; i < grid.size(); ++i)
    REQUIRE(grid[i] > grid[i - 1]);
}

TEST_CASE("the closed form passes the equivalence check", "[superstat]") {
  const mev::WeibullParams p(9.2, 0.78);
  const auto grid = mev::equivalence_grid(p, 1000);
  const mev::BinomialOccurrence occ(365, 0.7);
  const auto report = mev::verify_equivalence(grid, occ, p);
  REQUIRE(report.pass);
  REQUIRE(report.max_abs_dev < 1e-10);
}

TEST_CASE("equivalence deviation is exactly zero when every day is wet",
          "[superstat]") {
  // With p0 = 0 one binomial term survives and both routes walk the same
  // code path, so the difference is identically zero.
  const mev::WeibullParams p(3.5, 1.1);
  const auto grid = mev::equivalence_grid(p, 200);
  const mev::BinomialOccurrence occ(50, 0.0);
  const auto report = mev::verify_equivalence(grid, occ, p);
  REQUIRE(report.pass);
  REQUIRE(report.max_abs_dev == 0.0);
}

TEST_CASE("the deviation probe detects a corrupted closed form",
          "[superstat]") {
  const mev::WeibullParams p(9.2, 0.78);
  const auto grid = mev::equivalence_grid(p, 200);
  const mev::BinomialOccurrence occ(365, 0.7);
  const auto [dev, at] = mev::max_abs_deviation(
      grid, [&](double x) { return mev::mevd_binomial_cdf(occ, p, x); },
      [&](double x) {
        return mev::superstat_annual_cdf(0.7, p, 364, x);  // wrong exponent
      });
  REQUIRE(dev > 1e-4);
  REQUIRE(at >= grid.front());
  REQUIRE(at <= grid.back());
}

TEST_CASE("ks statistic has the exact value on its own quantiles",
          "[superstat]") {
  const mev::WeibullParams p(2.0, 1.3);
  const auto cdf = [&](double x) { return mev::weibull_cdf(p, x); };
  for (std::size_t n : {5u, 20u, 101u}) {
    std::vector<double> sample(n);
    for (std::size_t i = 0; i < n; ++i)
      sample[i] = mev::weibull_quantile(
          p, static_cast<double>(i + 1) / static_cast<double>(n + 1));
    REQUIRE_THAT(mev::ks_statistic(cdf, sample),
                 WithinRel(1.0 / static_cast<double>(n + 1), 1e-9));
  }
}

TEST_CASE("ks statistic saturates when the model misses the sample",
          "[superstat]") {
  // Model support far above every sample point: cdf is 0 there, so the
  // empirical gap reaches 1.
  const mev::WeibullParams p(1.0, 1.0, 1000.0);
  const std::vector<double> sample{1.0, 2.0, 3.0, 4.0, 5.0};
  REQUIRE(mev::ks_statistic(
              [&](double x) { return mev::weibull_cdf(p, x); }, sample) ==
          1.0);
}

TEST_CASE("ks statistic is invariant under a power-of-two relabeling",
          "[superstat]") {
  std::mt19937_64 rng(5555);
  const mev::WeibullParams p(3.0, 0.8);
  std::vector<double> sample(200), scaled(200);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    sample[i] = mev::weibull_quantile(p, oracles::uniform(rng));
    scaled[i] = 4.0 * sample[i];
  }
  const double d1 =
      mev::ks_statistic([&](double x) { return mev::weibull_cdf(p, x); },
                        sample);
  const double d2 = mev::ks_statistic(
      [&](double x) { return mev::weibull_cdf(p, x / 4.0); }, scaled);
  REQUIRE(d1 == d2);
  REQUIRE(d1 > 0.0);
  // A genuine sample stays within the 95% Kolmogorov band (seeded draw).
  REQUIRE(d1 < oracles::kKolmogorov95 / std::sqrt(200.0));
}

TEST_CASE("ks statistic rejects an empty sample", "[superstat]") {
  REQUIRE_THROWS_AS(
      mev::ks_statistic([](double) { return 0.5; }, std::vector<double>{}),
      std::invalid_argument);
}

TEST_CASE("superstat model validates its construction", "[superstat]") {
  const mev::WeibullParams p(2.0, 1.0);
  REQUIRE_THROWS_AS(mev::SuperstatModel({}, 365, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::SuperstatModel({{0.5, p}}, 0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(mev::SuperstatModel({{1.5, p}}, 365, 0.0),
                    std::invalid_argument);
  // Position mismatch between model and member years.
  REQUIRE_THROWS_AS(mev::SuperstatModel({{0.5, p}}, 365, 1.0),
                    std::invalid_argument);
  const mev::WeibullParams shifted(2.0, 1.0, 1.0);
  REQUIRE_NOTHROW(mev::SuperstatModel({{0.5, shifted}}, 365, 1.0));
}

TEST_CASE("superstat quantile inverts the cdf and respects the dry atom",
          "[superstat]") {
  std::mt19937_64 rng(9090);
  std::vector<mev::SuperstatYear> years;
  for (int i = 0; i < 12; ++i)
    years.push_back({oracles::uniform_in(rng, 0.3, 0.9),
                     mev::WeibullParams(oracles::uniform_in(rng, 2.0, 15.0),
                                        oracles::uniform_in(rng, 0.6, 1.4))});
  const mev::SuperstatModel model(years, 365, 0.0);
  for (double prob : {0.05, 0.5, 0.9, 0.99, 0.999}) {
    const double q = model.quantile(prob);
    REQUIRE_THAT(model.cdf(q), WithinAbs(prob, 1e-9));
  }
  REQUIRE_THROWS_AS(model.quantile(0.0), std::domain_error);
  REQUIRE_THROWS_AS(model.quantile(1.0), std::domain_error);

  // Few days and heavy dryness leave a sizable atom at the position:
  // probabilities inside it invert to the position itself.
  const mev::SuperstatModel atomic({{0.5, mev::WeibullParams(2.0, 1.0)}}, 5,
                                   0.0);
  const double floor = std::pow(0.5, 5);
  REQUIRE_THAT(atomic.cdf(0.0), WithinRel(floor, 1e-12));
  REQUIRE(atomic.quantile(floor / 2.0) == 0.0);
  REQUIRE(atomic.quantile(floor * 2.0) > 0.0);
}

TEST_CASE("superstat return levels carry their own tag", "[superstat]") {
  const mev::SuperstatModel model({{0.7, mev::WeibullParams(9.2, 0.78)}},
                                  365, 0.0);
  const auto table = mev::return_levels(model);
  REQUIRE(table.size() == 7);
  REQUIRE(table[0].model_tag == "superstat");
  REQUIRE(table[0].level == model.quantile(0.5));
}

namespace {

struct SimulatedStation {
  std::vector<mev::YearBlock> blocks;
  std::vector<double> maxima;
};

// Daily draws from a homogeneous intermittent process: each day wet with
// probability 1 - dry_prob, magnitudes position + Weibull(scale, shape).
SimulatedStation simulate_blocks(int n_years, int n_days, double dry_prob,
                                 const mev::WeibullParams& magnitude,
                                 double position, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SimulatedStation out;
  for (int year = 0; year < n_years; ++year) {
    mev::YearBlock block;
    block.year = 2000 + year;
    block.n_observed_days = n_days;
    double mx = 0.0;
    for (int day = 0; day < n_days; ++day) {
      if (oracles::uniform(rng) < dry_prob) continue;
      const double v =
          position + mev::weibull_quantile(magnitude, oracles::uniform(rng));
      block.magnitudes.push_back(v);
      mx = std::max(mx, v);
    }
    if (block.magnitudes.size() < 2) {  // keep the fixture well fed
      --year;
      continue;
    }
    out.blocks.push_back(std::move(block));
    out.maxima.push_back(mx);
  }
  return out;
}

}  // namespace

TEST_CASE("superstat fit recovers a process with no position",
          "[superstat]") {
  const mev::WeibullParams truth(9.2, 0.78);
  const auto sim = simulate_blocks(40, 365, 0.7, truth, 0.0, 123321);
  const auto fit = mev::fit_superstat(sim.blocks, sim.maxima);

  REQUIRE(fit.ks <= fit.ks_at_zero);
  REQUIRE(fit.model.position() == fit.position);
  REQUIRE(fit.years.size() == fit.model.years().size());
  // The fitted model describes the maxima it was tuned on.
  REQUIRE(fit.ks < oracles::kKolmogorov95 /
                       std::sqrt(static_cast<double>(sim.maxima.size())));

  // Per-year dry probability comes straight from the event count.
  for (std::size_t i = 0; i < fit.years.size(); ++i) {
    const int year = fit.years[i];
    for (const auto& b : sim.blocks) {
      if (b.year != year) continue;
      const double expect = 1.0 - b.n_events() / 365.0;
      REQUIRE_THAT(fit.model.years()[i].dry_prob, WithinAbs(expect, 1e-12));
    }
  }
}

TEST_CASE("superstat fit benefits from a true position shift",
          "[superstat]") {
  const mev::WeibullParams truth(6.0, 0.9);
  const auto sim = simulate_blocks(150, 365, 0.6, truth, 2.0, 424242);
  const auto fit = mev::fit_superstat(sim.blocks, sim.maxima);
  REQUIRE(fit.ks <= fit.ks_at_zero);
  REQUIRE(fit.model.position() >= 0.0);
  REQUIRE(fit.ks < oracles::kKolmogorov95 /
                       std::sqrt(static_cast<double>(sim.maxima.size())));
}

TEST_CASE("superstat fit validates its inputs", "[superstat]") {
  const mev::WeibullParams truth(9.2, 0.78);
  const auto sim = simulate_blocks(10, 365, 0.7, truth, 0.0, 808);

  REQUIRE_THROWS_AS(mev::fit_superstat(sim.blocks, std::vector<double>{}),
                    mev::DataError);
  REQUIRE_THROWS_AS(
      mev::fit_superstat(sim.blocks, std::vector<double>{5.0, -1.0}),
      mev::DataError);

  std::vector<mev::YearBlock> sparse;
  sparse.push_back({2001, {1.0, 2.0}, 365});
  sparse.push_back({2002, {1.5}, 365});
  sparse.push_back({2003, {}, 365});
  REQUIRE_THROWS_AS(mev::fit_superstat(sparse, std::vector<double>{2.0}),
                    mev::DataError);

  std::vector<mev::YearBlock> overfull;
  overfull.push_back({2001, std::vector<double>(8, 1.0), 365});
  mev::SuperstatFitOptions opts;
  opts.n_days = 5;
  REQUIRE_THROWS_AS(
      mev::fit_superstat(overfull, std::vector<double>{1.0}, opts),
      mev::DataError);
}
