// Copyright 2026 The mmcoord Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMCOORD_EXPERIMENT_HPP_
#define MMCOORD_EXPERIMENT_HPP_

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmcoord/baselines.hpp"
#include "mmcoord/channel.hpp"
#include "mmcoord/config.hpp"
#include "mmcoord/coordinator.hpp"
#include "mmcoord/metrics.hpp"
#include "mmcoord/rng.hpp"
#include "mmcoord/topology.hpp"

namespace mmcoord {

enum class Scheme { kGreedy, kExhaustive, kSingleFdc, kOrthogonal };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kGreedy: return "greedy";
    case Scheme::kExhaustive: return "exhaustive";
    case Scheme::kSingleFdc: return "single_fdc";
    case Scheme::kOrthogonal: return "orthogonal";
  }
  return "unknown";
}

inline std::optional<Scheme> parse_scheme(const std::string& name) {
  if (name == "greedy") return Scheme::kGreedy;
  if (name == "exhaustive") return Scheme::kExhaustive;
  if (name == "single_fdc") return Scheme::kSingleFdc;
  if (name == "orthogonal") return Scheme::kOrthogonal;
  return std::nullopt;
}

// Programmatic comparator slot: external solvers can join a sweep without
// touching the built-in scheme list.
struct CustomScheme {
  std::string name;
  std::function<Allocation(const GainTensor&, const SystemConfig&)> solver;
};

// One Monte Carlo campaign: a base system, a transmit-power sweep, and the
// drop/realization counts. Seeds derive as root -> drop -> realization, so
// every cell is reproducible in isolation and all schemes inside one cell
// share the same gain tensor.
struct ExperimentSpec {
  SystemConfig base;
  std::vector<double> power_dbm = {30.0};
  int num_drops = 10;
  int realizations_per_drop = 100;
  std::vector<Scheme> schemes = {Scheme::kGreedy, Scheme::kSingleFdc,
                                 Scheme::kOrthogonal};
  std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;
  std::string output_path;  // empty: rows are returned but no CSV is written
  std::optional<CustomScheme> custom;

  void validate() const {
    base.validate();
    if (power_dbm.empty())
      throw std::invalid_argument("ExperimentSpec: power sweep is empty");
    if (num_drops < 1)
      throw std::invalid_argument("ExperimentSpec: num_drops must be >= 1");
    if (realizations_per_drop < 1)
      throw std::invalid_argument(
          "ExperimentSpec: realizations_per_drop must be >= 1");
    if (schemes.empty() && !custom)
      throw std::invalid_argument("ExperimentSpec: no schemes requested");
    if (custom && !custom->solver)
      throw std::invalid_argument("ExperimentSpec: custom scheme lacks solver");
  }
};

// One (scheme, power, drop, realization) evaluation.
struct ResultRow {
  std::string scheme;
  double power_dbm = 0.0;
  int drop = 0;
  int realization = 0;
  double min_rate = 0.0;
  double sum_rate = 0.0;
  int iterations = 0;   // greedy refinement rounds; 0 for one-shot schemes
  double wall_ms = 0.0; // kept out of the CSV: rows must be byte-stable
};

struct SchemeSummary {
  std::string scheme;
  double power_dbm = 0.0;
  int cells = 0;
  double mean_min_rate = 0.0;
  double mean_sum_rate = 0.0;
  double mean_iterations = 0.0;
  double total_wall_ms = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SchemeSummary> summary;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto out = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 12);
  return std::string(buf, out.ptr);
}

inline std::string format_int(long long v) {
  char buf[32];
  const auto out = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, out.ptr);
}

}  // namespace detail

inline std::string csv_header() {
  return "scheme,power_dbm,drop,realization,min_rate,sum_rate,iterations";
}

inline std::string csv_line(const ResultRow& row) {
  using detail::format_double;
  using detail::format_int;
  return row.scheme + "," + format_double(row.power_dbm) + "," +
         format_int(row.drop) + "," + format_int(row.realization) + "," +
         format_double(row.min_rate) + "," + format_double(row.sum_rate) +
         "," + format_int(row.iterations);
}

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << csv_header() << '\n';
  for (const ResultRow& row : rows) os << csv_line(row) << '\n';
}

// Runs the campaign. The gain tensor is built once per (drop, realization)
// — it does not depend on transmit power — and shared by every scheme and
// every power point of that cell; rows come out sorted by (power, drop,
// realization, scheme) and a fixed seed reproduces them byte for byte.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();

  ExperimentResult result;

  const std::uint64_t search_size = exhaustive_search_size(
      spec.base.num_fdcs, spec.base.users_per_fdc);
  bool exhaustive_allowed = true;
  for (Scheme s : spec.schemes) {
    if (s == Scheme::kExhaustive && search_size > spec.exhaustive_cap) {
      exhaustive_allowed = false;
      result.warnings.push_back(
          "exhaustive scheme skipped: search space exceeds cap of " +
          std::to_string(spec.exhaustive_cap) + "; rows carry NaN metrics");
      break;
    }
  }

  struct Keyed {
    int power_index;
    int drop;
    int realization;
    int scheme_index;
    ResultRow row;
  };
  std::vector<Keyed> keyed;

  const int total_schemes =
      static_cast<int>(spec.schemes.size()) + (spec.custom ? 1 : 0);
  keyed.reserve(static_cast<std::size_t>(spec.power_dbm.size()) *
                spec.num_drops * spec.realizations_per_drop * total_schemes);

  for (int drop = 0; drop < spec.num_drops; ++drop) {
    const std::uint64_t drop_seed = derive_seed(spec.base.rng_seed, drop);
    RandomStream drop_rng(drop_seed);
    const Topology topo = generate_topology(spec.base, drop_rng);
    const LargeScaleCsi csi = draw_large_scale(spec.base, topo, drop_rng);

    for (int realization = 0; realization < spec.realizations_per_drop;
         ++realization) {
      RandomStream cell_rng(derive_seed(drop_seed, realization));
      const SmallScaleRealization ss = draw_small_scale(spec.base, cell_rng);
      const GainTensor gains = build_gain_tensor(csi, ss, spec.base);

      for (int p = 0; p < static_cast<int>(spec.power_dbm.size()); ++p) {
        SystemConfig cfg = spec.base;
        cfg.tx_power = dbm_to_watts(spec.power_dbm[p]);

        auto push_row = [&](int scheme_index, const std::string& name,
                            double min_r, double sum_r, int iterations,
                            double wall_ms) {
          Keyed k;
          k.power_index = p;
          k.drop = drop;
          k.realization = realization;
          k.scheme_index = scheme_index;
          k.row = ResultRow{name, spec.power_dbm[p], drop, realization,
                            min_r, sum_r, iterations, wall_ms};
          keyed.push_back(std::move(k));
        };

        auto timed_rates = [&](const Allocation& alloc,
                               const std::chrono::steady_clock::time_point t0,
                               int scheme_index, const std::string& name,
                               int iterations) {
          const SinrTable table = sinr_table(gains, alloc, cfg);
          const double wall =
              std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
          push_row(scheme_index, name, min_rate(table), sum_rate(table),
                   iterations, wall);
        };

        for (int s = 0; s < static_cast<int>(spec.schemes.size()); ++s) {
          const Scheme scheme = spec.schemes[s];
          const auto t0 = std::chrono::steady_clock::now();
          switch (scheme) {
            case Scheme::kGreedy: {
              const SolveReport report = solve_greedy(gains, cfg);
              timed_rates(report.allocation, t0, s, "greedy",
                          report.outer_iterations);
              break;
            }
            case Scheme::kExhaustive: {
              if (!exhaustive_allowed) {
                push_row(s, "exhaustive",
                         std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(), 0, 0.0);
                break;
              }
              timed_rates(solve_exhaustive(gains, cfg, spec.exhaustive_cap),
                          t0, s, "exhaustive", 0);
              break;
            }
            case Scheme::kSingleFdc:
              timed_rates(solve_single_fdc(gains, cfg), t0, s, "single_fdc",
                          0);
              break;
            case Scheme::kOrthogonal: {
              const OrthogonalResult orth = eval_orthogonal(gains, cfg);
              const double wall =
                  std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
              push_row(s, "orthogonal", orth.min_rate, orth.sum_rate, 0,
                       wall);
              break;
            }
          }
        }
        if (spec.custom) {
          const auto t0 = std::chrono::steady_clock::now();
          timed_rates(spec.custom->solver(gains, cfg), t0,
                      static_cast<int>(spec.schemes.size()),
                      spec.custom->name, 0);
        }
      }
    }
  }

  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.power_index != b.power_index) return a.power_index < b.power_index;
    if (a.drop != b.drop) return a.drop < b.drop;
    if (a.realization != b.realization) return a.realization < b.realization;
    return a.scheme_index < b.scheme_index;
  });

  result.rows.reserve(keyed.size());
  for (Keyed& k : keyed) result.rows.push_back(std::move(k.row));

  // Per-(scheme, power) aggregates; NaN rows of skipped schemes are left out.
  for (int p = 0; p < static_cast<int>(spec.power_dbm.size()); ++p) {
    for (int s = 0; s < total_schemes; ++s) {
      SchemeSummary summary;
      summary.power_dbm = spec.power_dbm[p];
      summary.scheme = s < static_cast<int>(spec.schemes.size())
                           ? scheme_name(spec.schemes[s])
                           : spec.custom->name;
      for (const Keyed& k : keyed) {
        if (k.power_index != p || k.scheme_index != s) continue;
        if (std::isnan(k.row.min_rate)) continue;
        ++summary.cells;
        summary.mean_min_rate += k.row.min_rate;
        summary.mean_sum_rate += k.row.sum_rate;
        summary.mean_iterations += k.row.iterations;
        summary.total_wall_ms += k.row.wall_ms;
      }
      if (summary.cells > 0) {
        summary.mean_min_rate /= summary.cells;
        summary.mean_sum_rate /= summary.cells;
        summary.mean_iterations /= summary.cells;
      }
      result.summary.push_back(std::move(summary));
    }
  }

  if (!spec.output_path.empty()) {
    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out)
      throw std::runtime_error("run_experiment: cannot open output file: " +
                               spec.output_path);
    write_csv(result.rows, out);
    if (!out)
      throw std::runtime_error("run_experiment: write failed: " +
                               spec.output_path);
  }
  return result;
}

}  // namespace mmcoord

#endif  // MMCOORD_EXPERIMENT_HPP_
