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

// Command-line front end:
//   mmcoord generate  — drop a topology + large-scale state, emit JSON
//   mmcoord solve     — run schemes on one (drop, realization) cell
//   mmcoord sweep     — Monte Carlo campaign over a transmit-power sweep
//   mmcoord oracle    — brute-force self-checks of the solver stack

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mmcoord/json_io.hpp"
#include "mmcoord/mmcoord.hpp"

namespace {

using mmcoord::Json;

mmcoord::SystemConfig resolve_config(const std::string& config_path,
                                     std::optional<std::uint64_t> seed) {
  mmcoord::SystemConfig cfg;
  if (!config_path.empty()) cfg = mmcoord::load_config_file(config_path);
  if (seed) cfg.rng_seed = *seed;
  cfg.validate();
  return cfg;
}

void write_output(const Json& payload, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload.dump(2) << std::endl;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << payload.dump(2) << '\n';
}

std::vector<mmcoord::Scheme> parse_schemes(
    const std::vector<std::string>& names) {
  std::vector<mmcoord::Scheme> schemes;
  for (const std::string& name : names) {
    const auto parsed = mmcoord::parse_scheme(name);
    if (!parsed)
      throw std::runtime_error(
          "unknown scheme \"" + name +
          "\" (known: greedy, exhaustive, single_fdc, orthogonal; other "
          "names are reserved for plug-in comparators)");
    schemes.push_back(*parsed);
  }
  return schemes;
}

int run_generate(const std::string& config_path,
                 std::optional<std::uint64_t> seed, int drop,
                 const std::string& out_path) {
  const mmcoord::SystemConfig cfg = resolve_config(config_path, seed);
  mmcoord::RandomStream rng(mmcoord::derive_seed(cfg.rng_seed, drop));
  const mmcoord::Topology topo = mmcoord::generate_topology(cfg, rng);
  const mmcoord::LargeScaleCsi csi = mmcoord::draw_large_scale(cfg, topo, rng);
  write_output(Json{{"config", mmcoord::to_json(cfg)},
                    {"drop", drop},
                    {"topology", mmcoord::to_json(topo)},
                    {"large_scale", mmcoord::to_json(csi)}},
               out_path);
  return 0;
}

int run_solve(const std::string& config_path, std::optional<std::uint64_t> seed,
              int drop, int realization, std::optional<double> power_dbm,
              const std::vector<std::string>& scheme_names,
              const std::string& out_path) {
  mmcoord::SystemConfig cfg = resolve_config(config_path, seed);
  if (power_dbm) cfg.tx_power = mmcoord::dbm_to_watts(*power_dbm);

  const std::uint64_t drop_seed = mmcoord::derive_seed(cfg.rng_seed, drop);
  mmcoord::RandomStream drop_rng(drop_seed);
  const mmcoord::Topology topo = mmcoord::generate_topology(cfg, drop_rng);
  const mmcoord::LargeScaleCsi csi =
      mmcoord::draw_large_scale(cfg, topo, drop_rng);
  mmcoord::RandomStream cell_rng(mmcoord::derive_seed(drop_seed, realization));
  const mmcoord::SmallScaleRealization ss =
      mmcoord::draw_small_scale(cfg, cell_rng);
  const mmcoord::GainTensor gains = mmcoord::build_gain_tensor(csi, ss, cfg);

  const std::vector<mmcoord::Scheme> schemes =
      parse_schemes(scheme_names.empty()
                        ? std::vector<std::string>{"greedy"}
                        : scheme_names);

  Json results = Json::array();
  for (mmcoord::Scheme scheme : schemes) {
    Json entry{{"scheme", mmcoord::scheme_name(scheme)}};
    auto add_rates = [&](const mmcoord::Allocation& alloc) {
      const mmcoord::SinrTable table = mmcoord::sinr_table(gains, alloc, cfg);
      entry["allocation"] = mmcoord::to_json(alloc);
      entry["min_sinr"] = mmcoord::min_sinr(table);
      entry["min_rate"] = mmcoord::min_rate(table);
      entry["sum_rate"] = mmcoord::sum_rate(table);
    };
    switch (scheme) {
      case mmcoord::Scheme::kGreedy: {
        const mmcoord::SolveReport report = mmcoord::solve_greedy(gains, cfg);
        add_rates(report.allocation);
        entry["report"] = mmcoord::to_json(report);
        break;
      }
      case mmcoord::Scheme::kExhaustive:
        add_rates(mmcoord::solve_exhaustive(gains, cfg));
        break;
      case mmcoord::Scheme::kSingleFdc:
        add_rates(mmcoord::solve_single_fdc(gains, cfg));
        break;
      case mmcoord::Scheme::kOrthogonal: {
        const mmcoord::OrthogonalResult orth =
            mmcoord::eval_orthogonal(gains, cfg);
        entry["allocation"] = mmcoord::to_json(orth.allocation);
        entry["min_rate"] = orth.min_rate;
        entry["sum_rate"] = orth.sum_rate;
        break;
      }
    }
    results.push_back(std::move(entry));
  }

  write_output(Json{{"drop", drop},
                    {"realization", realization},
                    {"power_dbm", mmcoord::watts_to_dbm(cfg.tx_power)},
                    {"results", results}},
               out_path);
  return 0;
}

int run_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::vector<double>& power_dbm, std::optional<int> drops,
              std::optional<int> realizations,
              const std::vector<std::string>& scheme_names,
              std::optional<std::uint64_t> cap, const std::string& out_path,
              std::string summary_path) {
  mmcoord::ExperimentSpec spec;
  if (!config_path.empty())
    spec = mmcoord::experiment_spec_from_json(
        mmcoord::load_json_file(config_path));
  if (seed) spec.base.rng_seed = *seed;
  if (!power_dbm.empty()) spec.power_dbm = power_dbm;
  if (drops) spec.num_drops = *drops;
  if (realizations) spec.realizations_per_drop = *realizations;
  if (!scheme_names.empty()) spec.schemes = parse_schemes(scheme_names);
  if (cap) spec.exhaustive_cap = *cap;
  if (!out_path.empty()) spec.output_path = out_path;
  if (spec.output_path.empty()) spec.output_path = "results.csv";
  if (summary_path.empty()) summary_path = spec.output_path + ".summary.json";

  const mmcoord::ExperimentResult result = mmcoord::run_experiment(spec);

  for (const std::string& warning : result.warnings)
    std::cerr << "warning: " << warning << '\n';

  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary)
    throw std::runtime_error("cannot open summary file: " + summary_path);
  summary << mmcoord::summary_to_json(result).dump(2) << '\n';

  std::cout << "rows: " << result.rows.size() << " -> " << spec.output_path
            << "\nsummary -> " << summary_path << '\n';
  for (const mmcoord::SchemeSummary& s : result.summary) {
    std::cout << s.scheme << " @ " << s.power_dbm
              << " dBm: mean min-rate " << s.mean_min_rate
              << ", mean sum-rate " << s.mean_sum_rate << " ("
              << s.cells << " cells)\n";
  }
  return 0;
}

int run_oracle(std::uint64_t seed, int trials, std::uint64_t cap) {
  const mmcoord::validation::SelfCheckReport report =
      mmcoord::validation::run_self_checks(seed, trials, cap);
  for (const std::string& line : report.lines) std::cout << line << '\n';
  std::cout << report.checks - report.failures << "/" << report.checks
            << " checks passed\n";
  return report.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FRB coordination simulator for ultra-dense mmWave networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  int drop = 0;
  int realization = 0;
  std::optional<double> power_dbm_single;
  std::vector<double> power_dbm_list;
  std::optional<int> drops;
  std::optional<int> realizations;
  std::vector<std::string> scheme_names;
  std::optional<std::uint64_t> cap;
  std::string summary_path;
  std::uint64_t oracle_seed = 1;
  int oracle_trials = 100;
  std::uint64_t oracle_cap = mmcoord::kDefaultExhaustiveCap;

  CLI::App* generate = app.add_subcommand(
      "generate", "Drop a topology and large-scale state, emit JSON");
  generate->add_option("--config", config_path, "System config JSON file");
  generate->add_option("--seed", seed, "Root RNG seed override");
  generate->add_option("--drop", drop, "Drop id (seeds derive from it)");
  generate->add_option("--out", out_path, "Output path ('-' for stdout)");

  CLI::App* solve = app.add_subcommand(
      "solve", "Solve one (drop, realization) cell with selected schemes");
  solve->add_option("--config", config_path, "System config JSON file");
  solve->add_option("--seed", seed, "Root RNG seed override");
  solve->add_option("--drop", drop, "Drop id");
  solve->add_option("--realization", realization, "Realization id");
  solve->add_option("--power-dbm", power_dbm_single,
                    "Transmit power override, dBm");
  solve->add_option("--scheme", scheme_names,
                    "Schemes to run (default: greedy)");
  solve->add_option("--out", out_path, "Output path ('-' for stdout)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Monte Carlo campaign over a transmit-power sweep");
  sweep->add_option("--config", config_path,
                    "Experiment or system config JSON file");
  sweep->add_option("--seed", seed, "Root RNG seed override");
  sweep->add_option("--power-dbm", power_dbm_list, "Power points, dBm");
  sweep->add_option("--drops", drops, "Large-scale drops");
  sweep->add_option("--realizations", realizations,
                    "Small-scale realizations per drop");
  sweep->add_option("--scheme", scheme_names, "Schemes to run");
  sweep->add_option("--cap", cap, "Exhaustive search cap");
  sweep->add_option("--out", out_path, "CSV output path");
  sweep->add_option("--summary", summary_path, "Summary JSON path");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Run brute-force self-checks of the solver stack");
  oracle->add_option("--seed", oracle_seed, "Self-check RNG seed");
  oracle->add_option("--trials", oracle_trials, "Instances per check");
  oracle->add_option("--cap", oracle_cap, "Exhaustive search cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return run_generate(config_path, seed, drop, out_path);
    if (solve->parsed())
      return run_solve(config_path, seed, drop, realization, power_dbm_single,
                       scheme_names, out_path);
    if (sweep->parsed())
      return run_sweep(config_path, seed, power_dbm_list, drops, realizations,
                       scheme_names, cap, out_path, summary_path);
    if (oracle->parsed())
      return run_oracle(oracle_seed, oracle_trials, oracle_cap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
