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
//
// mevtool: daily-record extreme value analysis from the command line.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error,
// 3 numerical failure, 4 failed equivalence check.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "mev/mev.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitEquivalenceFail = 4;

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw mev::DataError("cannot write '" + path + "'");
  return file;
}

mev::DailySeries read_daily(const std::string& path,
                            const mev::IngestOptions& opts) {
  if (path == "-") return mev::parse_daily_csv(std::cin, opts);
  std::ifstream in(path);
  if (!in) throw mev::DataError("cannot open '" + path + "'");
  return mev::parse_daily_csv(in, opts);
}

mev::EstimatorMethod parse_estimator(const std::string& name) {
  const auto m = mev::estimator_from_string(name);
  if (!m || *m == mev::EstimatorMethod::lmom)
    throw std::invalid_argument("estimator must be 'pwm' or 'mle'");
  return *m;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct IngestFlags {
  double wet_threshold = 0.0;
  double min_coverage = 0.9;
  std::vector<std::string> na;
};

void add_ingest_flags(CLI::App* cmd, IngestFlags& flags) {
  cmd->add_option("--wet-threshold", flags.wet_threshold,
                  "Values must strictly exceed this to count as events");
  cmd->add_option("--min-coverage", flags.min_coverage,
                  "Minimum observed fraction of a year to keep it");
  cmd->add_option("--na", flags.na,
                  "Missing-value sentinel (repeatable; replaces the "
                  "default of empty and NA)");
}

mev::BlockifyResult ingest_blocks(const std::string& input,
                                  const IngestFlags& flags) {
  mev::IngestOptions iopts;
  if (!flags.na.empty()) iopts.missing_sentinels = flags.na;
  const auto series = read_daily(input, iopts);
  const auto result =
      mev::blockify(series, {flags.wet_threshold, flags.min_coverage});
  for (const auto& d : result.dropped)
    std::cerr << "warning: year " << d.year << " dropped (coverage "
              << mev::format_double(d.coverage) << ")\n";
  return result;
}

int cmd_simulate(int years, std::uint64_t seed, int n_days,
                 const std::string& occurrence, double p0, double p01,
                 double p11, double p_init, double scale_median,
                 double scale_log_sd, double shape_mean, double shape_sd,
                 double position, int start_year,
                 const std::string& output) {
  if (n_days < 1 || n_days > 365)
    throw std::invalid_argument("--n-days must lie in [1, 365]");
  mev::OccurrenceSpec occ =
      occurrence == "markov1"
          ? mev::OccurrenceSpec::markov1(p01, p11, p_init, n_days)
          : mev::OccurrenceSpec::binomial(p0, n_days);
  const mev::HyperParams hyper(scale_median, scale_log_sd, shape_mean,
                               shape_sd, position);
  const auto station = mev::simulate_station(occ, hyper, years, seed);
  std::ofstream file;
  auto& out = open_output(output, file);
  mev::write_daily_csv(out, station, start_year);
  return 0;
}

int cmd_fit(const std::string& input, const std::string& prefix,
            const std::string& estimator, const IngestFlags& ingest,
            int min_events, int n_days) {
  const auto method = parse_estimator(estimator);
  const auto blocks = ingest_blocks(input, ingest);

  const auto station =
      mev::fit_station(blocks.blocks, {method, min_events, false});
  for (const auto& s : station.skipped)
    std::cerr << "warning: year " << s.year << " skipped (" << s.reason
              << ")\n";

  std::vector<double> maxima;
  for (const auto& b : blocks.blocks)
    if (const auto m = mev::block_maximum(b)) maxima.push_back(*m);

  mev::SuperstatFitOptions sopts;
  sopts.n_days = n_days;
  sopts.estimator = method;
  const auto super = mev::fit_superstat(blocks.blocks, maxima, sopts);
  for (const auto& s : super.skipped)
    std::cerr << "warning: year " << s.year << " skipped in closed-form fit ("
              << s.reason << ")\n";

  const auto gev = mev::fit_gev_annual_maxima(maxima);
  if (!gev.converged)
    throw mev::NumericError("gev fit did not converge");

  const std::string mevd_path = prefix + ".mevd.json";
  const std::string super_path = prefix + ".superstat.json";
  const std::string gev_path = prefix + ".gev.json";
  mev::write_json_file(mevd_path,
                       mev::to_json(station.model, mev::to_string(method)));
  mev::write_json_file(super_path, mev::to_json(super.model));
  mev::write_json_file(gev_path, mev::to_json(*gev.params));

  std::size_t n_events = 0;
  for (const auto& b : blocks.blocks)
    n_events += static_cast<std::size_t>(b.n_events());
  std::vector<double> scales, shapes;
  for (const auto& e : station.model.entries()) {
    scales.push_back(e.params.scale());
    shapes.push_back(e.params.shape());
  }

  std::cout << "input: " << input << '\n'
            << "years: " << blocks.blocks.size() << " kept, "
            << blocks.dropped.size() << " dropped\n"
            << "estimator: " << mev::to_string(method) << '\n'
            << "events: " << n_events << '\n'
            << "mevd: " << station.model.n_years() << " years, median scale "
            << mev::format_double(median_of(scales)) << ", median shape "
            << mev::format_double(median_of(shapes)) << '\n'
            << "superstat: position " << mev::format_double(super.position)
            << ", ks " << mev::format_double(super.ks) << ", "
            << super.model.years().size() << " years\n"
            << "gev: location "
            << mev::format_double(gev.params->location()) << ", scale "
            << mev::format_double(gev.params->scale()) << ", shape "
            << mev::format_double(gev.params->shape()) << '\n'
            << "wrote: " << mevd_path << ' ' << super_path << ' '
            << gev_path << '\n';
  return 0;
}

int cmd_return_levels(const std::string& model_path,
                      const std::vector<double>& periods,
                      const std::string& format,
                      const std::string& output) {
  const auto model = mev::model_from_json(mev::load_json_file(model_path));
  const auto table = std::visit(
      [&](const auto& m) { return mev::return_levels(m, periods); }, model);

  for (const auto& row : table)
    if (!row.level)
      std::cerr << "warning: T_r " << mev::format_double(row.return_period)
                << " failed (" << row.error << ")\n";

  std::ofstream file;
  auto& out = open_output(output, file);
  if (format == "json")
    out << mev::to_json(table).dump(2) << '\n';
  else
    mev::write_return_levels_csv(out, table);
  return 0;
}

int cmd_compare(const std::string& input, int window_years,
                const std::vector<double>& periods,
                const std::string& estimator, const IngestFlags& ingest,
                int min_events, int n_days, bool overlapping,
                const std::string& format, const std::string& output) {
  const auto method = parse_estimator(estimator);
  const auto blocks = ingest_blocks(input, ingest);

  std::vector<double> maxima;
  for (const auto& b : blocks.blocks)
    if (const auto m = mev::block_maximum(b)) maxima.push_back(*m);
  if (maxima.empty()) throw mev::DataError("record has no annual maxima");
  const mev::EmpiricalCdf reference(maxima);

  mev::CompareOptions copts;
  copts.window_years = window_years;
  copts.return_periods = periods;
  copts.estimator = method;
  copts.min_events_per_year = min_events;
  copts.n_days = n_days;
  copts.overlapping = overlapping;
  const auto report = mev::compare_models(
      blocks.blocks, [&](double p) { return reference.quantile(p); },
      copts);

  std::ofstream file;
  auto& out = open_output(output, file);
  if (format == "json")
    out << mev::to_json(report).dump(2) << '\n';
  else
    mev::write_compare_csv(out, report);
  return 0;
}

int cmd_verify_equivalence(const std::vector<double>& p0s,
                           const std::vector<double>& scales,
                           const std::vector<double>& shapes, int n_days,
                           std::size_t grid_points, double tol,
                           const std::string& output) {
  nlohmann::json cases = nlohmann::json::array();
  double worst_dev = -1.0;
  nlohmann::json worst;
  bool all_pass = true;
  for (const double scale : scales) {
    for (const double shape : shapes) {
      const mev::WeibullParams params(scale, shape);
      const auto grid = mev::equivalence_grid(params, grid_points);
      for (const double p0 : p0s) {
        const mev::BinomialOccurrence occ(n_days, p0);
        const auto rep = mev::verify_equivalence(grid, occ, params, tol);
        all_pass = all_pass && rep.pass;
        nlohmann::json c{{"dry_prob", p0},
                         {"scale", scale},
                         {"shape", shape},
                         {"n_days", n_days},
                         {"max_abs_dev", rep.max_abs_dev},
                         {"argmax_x", rep.argmax_x},
                         {"pass", rep.pass}};
        if (rep.max_abs_dev > worst_dev) {
          worst_dev = rep.max_abs_dev;
          worst = c;
        }
        cases.push_back(std::move(c));
      }
    }
  }

  const nlohmann::json summary{{"pass", all_pass},
                               {"tolerance", tol},
                               {"n_cases", cases.size()},
                               {"worst", worst},
                               {"cases", std::move(cases)}};
  std::ofstream file;
  auto& out = open_output(output, file);
  out << summary.dump(2) << '\n';
  return all_pass ? 0 : kExitEquivalenceFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Extreme value analysis of daily event records: compound "
      "annual-maximum models, closed-form and classical baselines"};
  app.require_subcommand(1);
  std::function<int()> action;

  // simulate
  {
    auto* cmd = app.add_subcommand(
        "simulate", "Generate a synthetic daily record as date,value CSV");
    struct SimOpts {
      int years = 100;
      std::uint64_t seed = 42;
      int n_days = 365;
      std::string occurrence = "binomial";
      double p0 = 0.7, p01 = 0.25, p11 = 0.55, p_init = -1.0;
      double scale_median = 9.2, scale_log_sd = 0.25;
      double shape_mean = 0.78, shape_sd = 0.08, position = 0.0;
      int start_year = 2001;
      std::string output = "-";
    };
    auto opts = std::make_shared<SimOpts>();
    cmd->add_option("--years", opts->years, "Years to simulate")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts->seed, "Master random seed");
    cmd->add_option("--n-days", opts->n_days, "Days per year (<= 365)");
    cmd->add_option("--occurrence", opts->occurrence,
                    "Wet/dry process: binomial or markov1")
        ->check(CLI::IsMember({"binomial", "markov1"}));
    cmd->add_option("--p0", opts->p0, "Dry-day probability (binomial)");
    cmd->add_option("--p01", opts->p01, "P(wet | dry) (markov1)");
    cmd->add_option("--p11", opts->p11, "P(wet | wet) (markov1)");
    cmd->add_option("--p-init", opts->p_init,
                    "P(wet) on day one (markov1); negative = stationary");
    cmd->add_option("--scale-median", opts->scale_median,
                    "Median of the yearly magnitude scale");
    cmd->add_option("--scale-log-sd", opts->scale_log_sd,
                    "Log-sd of the yearly magnitude scale");
    cmd->add_option("--shape-mean", opts->shape_mean,
                    "Mean of the yearly magnitude shape");
    cmd->add_option("--shape-sd", opts->shape_sd,
                    "Sd of the yearly magnitude shape");
    cmd->add_option("--position", opts->position,
                    "Lower bound of wet magnitudes");
    cmd->add_option("--start-year", opts->start_year,
                    "Calendar year of the first simulated year");
    cmd->add_option("--output", opts->output, "Output CSV path (- = stdout)");
    cmd->callback([opts, &action] {
      action = [opts] {
        return cmd_simulate(opts->years, opts->seed, opts->n_days,
                            opts->occurrence, opts->p0, opts->p01, opts->p11,
                            opts->p_init, opts->scale_median,
                            opts->scale_log_sd, opts->shape_mean,
                            opts->shape_sd, opts->position, opts->start_year,
                            opts->output);
      };
    });
  }

  // fit
  {
    auto* cmd = app.add_subcommand(
        "fit", "Fit the compound, closed-form, and GEV models to a record");
    struct FitOpts {
      std::string input;
      std::string output;
      std::string estimator = "pwm";
      IngestFlags ingest;
      int min_events = 2;
      int n_days = 365;
    };
    auto opts = std::make_shared<FitOpts>();
    cmd->add_option("--input", opts->input, "Daily date,value CSV (- = stdin)")
        ->required();
    cmd->add_option("--output", opts->output,
                    "Output prefix for the three model files")
        ->required();
    cmd->add_option("--estimator", opts->estimator,
                    "Per-year magnitude estimator")
        ->check(CLI::IsMember({"pwm", "mle"}));
    add_ingest_flags(cmd, opts->ingest);
    cmd->add_option("--min-events", opts->min_events,
                    "Minimum events for a year to be fitted");
    cmd->add_option("--n-days", opts->n_days,
                    "Days per year for the closed-form occurrence");
    cmd->callback([opts, &action] {
      action = [opts] {
        return cmd_fit(opts->input, opts->output, opts->estimator,
                       opts->ingest, opts->min_events, opts->n_days);
      };
    });
  }

  // return-levels
  {
    auto* cmd = app.add_subcommand(
        "return-levels", "Evaluate return levels of a fitted model file");
    struct RlOpts {
      std::string model;
      std::vector<double> tr{std::begin(mev::kDefaultReturnPeriods),
                             std::end(mev::kDefaultReturnPeriods)};
      std::string format = "csv";
      std::string output = "-";
    };
    auto opts = std::make_shared<RlOpts>();
    cmd->add_option("--model", opts->model, "Model JSON from 'fit'")
        ->required();
    cmd->add_option("--tr", opts->tr, "Return periods (years)")
        ->delimiter(',');
    cmd->add_option("--format", opts->format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", opts->output, "Output path (- = stdout)");
    cmd->callback([opts, &action] {
      action = [opts] {
        return cmd_return_levels(opts->model, opts->tr, opts->format,
                                 opts->output);
      };
    });
  }

  // compare
  {
    auto* cmd = app.add_subcommand(
        "compare",
        "Windowed out-of-sample comparison of the estimators on one record");
    struct CmpOpts {
      std::string input;
      int window_years = 20;
      std::vector<double> tr{std::begin(mev::kDefaultReturnPeriods),
                             std::end(mev::kDefaultReturnPeriods)};
      std::string estimator = "pwm";
      IngestFlags ingest;
      int min_events = 2;
      int n_days = 365;
      bool overlap = false;
      std::string format = "csv";
      std::string output = "-";
    };
    auto opts = std::make_shared<CmpOpts>();
    cmd->add_option("--input", opts->input, "Daily date,value CSV (- = stdin)")
        ->required();
    cmd->add_option("--window-years", opts->window_years,
                    "Training window length in years")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tr", opts->tr, "Return periods (years)")
        ->delimiter(',');
    cmd->add_option("--estimator", opts->estimator,
                    "Per-year magnitude estimator")
        ->check(CLI::IsMember({"pwm", "mle"}));
    add_ingest_flags(cmd, opts->ingest);
    cmd->add_option("--min-events", opts->min_events,
                    "Minimum events for a year to be fitted");
    cmd->add_option("--n-days", opts->n_days,
                    "Days per year for the closed-form occurrence");
    cmd->add_flag("--overlap", opts->overlap, "Slide windows by one year");
    cmd->add_option("--format", opts->format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", opts->output, "Output path (- = stdout)");
    cmd->callback([opts, &action] {
      action = [opts] {
        return cmd_compare(opts->input, opts->window_years, opts->tr,
                           opts->estimator, opts->ingest, opts->min_events,
                           opts->n_days, opts->overlap, opts->format,
                           opts->output);
      };
    });
  }

  // verify-equivalence
  {
    auto* cmd = app.add_subcommand(
        "verify-equivalence",
        "Check the binomial-mixture and closed-form CDF routes against "
        "each other");
    struct VerOpts {
      std::vector<double> p0{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
      std::vector<double> scales{1.0, 5.0, 20.0};
      std::vector<double> shapes{0.5, 0.7, 1.0, 1.5};
      int n_days = 365;
      std::size_t grid_points = 1000;
      double tol = 1e-10;
      std::string output = "-";
    };
    auto opts = std::make_shared<VerOpts>();
    cmd->add_option("--p0", opts->p0, "Dry-day probabilities to sweep")
        ->delimiter(',');
    cmd->add_option("--scale", opts->scales, "Magnitude scales to sweep")
        ->delimiter(',');
    cmd->add_option("--shape", opts->shapes, "Magnitude shapes to sweep")
        ->delimiter(',');
    cmd->add_option("--n-days", opts->n_days, "Days per year");
    cmd->add_option("--grid-points", opts->grid_points,
                    "Evaluation grid size");
    cmd->add_option("--tol", opts->tol, "Maximum allowed deviation");
    cmd->add_option("--output", opts->output,
                    "Report JSON path (- = stdout)");
    cmd->callback([opts, &action] {
      action = [opts] {
        return cmd_verify_equivalence(opts->p0, opts->scales, opts->shapes,
                                      opts->n_days, opts->grid_points,
                                      opts->tol, opts->output);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    return action();
  } catch (const mev::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const mev::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
