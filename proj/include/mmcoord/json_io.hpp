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

#ifndef MMCOORD_JSON_IO_HPP_
#define MMCOORD_JSON_IO_HPP_

// JSON serialization of configs, drops, gain tensors, solver reports, and
// experiment specs. Key absence means "keep the default", so partial config
// files stay valid as defaults evolve.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "mmcoord/config.hpp"
#include "mmcoord/coordinator.hpp"
#include "mmcoord/experiment.hpp"
#include "mmcoord/lbap.hpp"
#include "mmcoord/metrics.hpp"
#include "mmcoord/topology.hpp"

namespace mmcoord {

using Json = nlohmann::json;

namespace detail {

inline const char* los_mode_name(LosMode mode) {
  switch (mode) {
    case LosMode::kDistanceProbability: return "distance";
    case LosMode::kAllLos: return "all_los";
    case LosMode::kAllNlos: return "all_nlos";
  }
  return "distance";
}

inline LosMode parse_los_mode(const std::string& name) {
  if (name == "distance") return LosMode::kDistanceProbability;
  if (name == "all_los") return LosMode::kAllLos;
  if (name == "all_nlos") return LosMode::kAllNlos;
  throw std::invalid_argument("unknown los mode: " + name);
}

inline const char* ordering_name(FdcOrdering o) {
  switch (o) {
    case FdcOrdering::kInterferenceDescending: return "interference";
    case FdcOrdering::kIdentity: return "identity";
    case FdcOrdering::kRandomShuffle: return "random";
  }
  return "interference";
}

inline FdcOrdering parse_ordering(const std::string& name) {
  if (name == "interference") return FdcOrdering::kInterferenceDescending;
  if (name == "identity") return FdcOrdering::kIdentity;
  if (name == "random") return FdcOrdering::kRandomShuffle;
  throw std::invalid_argument("unknown fdc ordering: " + name);
}

inline const char* interference_mode_name(InterferenceMode m) {
  switch (m) {
    case InterferenceMode::kPerRealization: return "per_realization";
    case InterferenceMode::kAveraged: return "averaged";
  }
  return "per_realization";
}

inline InterferenceMode parse_interference_mode(const std::string& name) {
  if (name == "per_realization") return InterferenceMode::kPerRealization;
  if (name == "averaged") return InterferenceMode::kAveraged;
  throw std::invalid_argument("unknown interference mode: " + name);
}

inline Json pathloss_to_json(const PathLossParams& p) {
  return Json{{"intercept_db", p.intercept_db},
              {"exponent", p.exponent},
              {"shadow_std_db", p.shadow_std_db}};
}

inline PathLossParams pathloss_from_json(const Json& j, PathLossParams base) {
  base.intercept_db = j.value("intercept_db", base.intercept_db);
  base.exponent = j.value("exponent", base.exponent);
  base.shadow_std_db = j.value("shadow_std_db", base.shadow_std_db);
  return base;
}

}  // namespace detail

inline Json to_json(const SystemConfig& cfg) {
  return Json{
      {"num_fdcs", cfg.num_fdcs},
      {"users_per_fdc", cfg.users_per_fdc},
      {"num_antennas", cfg.num_antennas},
      {"carrier_wavelength_m", cfg.carrier_wavelength},
      {"element_spacing_m", cfg.element_spacing},
      {"tx_power_w", cfg.tx_power},
      {"noise_power_w", cfg.noise_power},
      {"area_radius_m", cfg.area_radius},
      {"serving_radius_m", cfg.serving_radius},
      {"num_paths", cfg.num_paths},
      {"bisection_tol", cfg.bisection_tol},
      {"greedy_tol", cfg.greedy_tol},
      {"los_mode", detail::los_mode_name(cfg.los_mode)},
      {"los_decay_distance_m", cfg.los_decay_distance},
      {"pathloss_los", detail::pathloss_to_json(cfg.pathloss_los)},
      {"pathloss_nlos", detail::pathloss_to_json(cfg.pathloss_nlos)},
      {"min_link_distance_m", cfg.min_link_distance},
      {"fdc_ordering", detail::ordering_name(cfg.fdc_ordering)},
      {"interference_mode",
       detail::interference_mode_name(cfg.interference_mode)},
      {"averaging_draws", cfg.averaging_draws},
      {"event_triggered_recoordination", cfg.event_triggered_recoordination},
      {"rng_seed", cfg.rng_seed},
  };
}

inline SystemConfig config_from_json(const Json& j) {
  SystemConfig cfg;
  cfg.num_fdcs = j.value("num_fdcs", cfg.num_fdcs);
  cfg.users_per_fdc = j.value("users_per_fdc", cfg.users_per_fdc);
  cfg.num_antennas = j.value("num_antennas", cfg.num_antennas);

  if (j.contains("carrier_frequency_hz"))
    cfg.carrier_wavelength =
        kSpeedOfLight / j.at("carrier_frequency_hz").get<double>();
  cfg.carrier_wavelength =
      j.value("carrier_wavelength_m", cfg.carrier_wavelength);
  // Spacing follows the (possibly overridden) wavelength unless given.
  cfg.element_spacing =
      j.value("element_spacing_m", cfg.carrier_wavelength / 2.0);

  if (j.contains("tx_power_dbm"))
    cfg.tx_power = dbm_to_watts(j.at("tx_power_dbm").get<double>());
  cfg.tx_power = j.value("tx_power_w", cfg.tx_power);
  if (j.contains("noise_power_dbm"))
    cfg.noise_power = dbm_to_watts(j.at("noise_power_dbm").get<double>());
  cfg.noise_power = j.value("noise_power_w", cfg.noise_power);

  cfg.area_radius = j.value("area_radius_m", cfg.area_radius);
  cfg.serving_radius = j.value("serving_radius_m", cfg.serving_radius);
  cfg.num_paths = j.value("num_paths", cfg.num_paths);
  cfg.bisection_tol = j.value("bisection_tol", cfg.bisection_tol);
  cfg.greedy_tol = j.value("greedy_tol", cfg.greedy_tol);
  if (j.contains("los_mode"))
    cfg.los_mode = detail::parse_los_mode(j.at("los_mode").get<std::string>());
  cfg.los_decay_distance =
      j.value("los_decay_distance_m", cfg.los_decay_distance);
  if (j.contains("pathloss_los"))
    cfg.pathloss_los =
        detail::pathloss_from_json(j.at("pathloss_los"), cfg.pathloss_los);
  if (j.contains("pathloss_nlos"))
    cfg.pathloss_nlos =
        detail::pathloss_from_json(j.at("pathloss_nlos"), cfg.pathloss_nlos);
  cfg.min_link_distance = j.value("min_link_distance_m", cfg.min_link_distance);
  if (j.contains("fdc_ordering"))
    cfg.fdc_ordering =
        detail::parse_ordering(j.at("fdc_ordering").get<std::string>());
  if (j.contains("interference_mode"))
    cfg.interference_mode = detail::parse_interference_mode(
        j.at("interference_mode").get<std::string>());
  cfg.averaging_draws = j.value("averaging_draws", cfg.averaging_draws);
  cfg.event_triggered_recoordination =
      j.value("event_triggered_recoordination",
              cfg.event_triggered_recoordination);
  cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
  cfg.validate();
  return cfg;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline SystemConfig load_config_file(const std::string& path) {
  return config_from_json(load_json_file(path));
}

inline Json to_json(const Topology& topo) {
  Json bs = Json::array();
  Json users = Json::array();
  Json membership = Json::array();
  for (int p = 0; p < topo.pairs(); ++p) {
    bs.push_back({topo.bs_positions[p].x, topo.bs_positions[p].y});
    users.push_back({topo.user_positions[p].x, topo.user_positions[p].y});
    membership.push_back(topo.fdc_of_pair(p));
  }
  return Json{{"num_fdcs", topo.num_fdcs},
              {"users_per_fdc", topo.users_per_fdc},
              {"bs_positions", bs},
              {"user_positions", users},
              {"fdc_of_bs", membership},
              {"pairing", "index_aligned"}};
}

inline Topology topology_from_json(const Json& j) {
  Topology topo;
  topo.num_fdcs = j.at("num_fdcs").get<int>();
  topo.users_per_fdc = j.at("users_per_fdc").get<int>();
  for (const auto& p : j.at("bs_positions"))
    topo.bs_positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  for (const auto& p : j.at("user_positions"))
    topo.user_positions.push_back(
        {p.at(0).get<double>(), p.at(1).get<double>()});
  if (static_cast<int>(topo.bs_positions.size()) != topo.pairs() ||
      static_cast<int>(topo.user_positions.size()) != topo.pairs())
    throw std::invalid_argument("topology JSON: position count mismatch");
  return topo;
}

inline Json to_json(const LargeScaleCsi& csi) {
  Json links = Json::array();
  const int n_fdcs = csi.num_fdcs();
  const int k_users = csi.users_per_fdc();
  for (int n = 0; n < n_fdcs; ++n)
    for (int k = 0; k < k_users; ++k)
      for (int m = 0; m < n_fdcs; ++m)
        for (int i = 0; i < k_users; ++i) {
          const LinkLargeScale& ls = csi.link(n, k, m, i);
          links.push_back(Json{{"rx", {n, k}},
                               {"tx", {m, i}},
                               {"distance_m", ls.distance},
                               {"los", ls.los},
                               {"shadowing_db", ls.shadowing_db},
                               {"path_loss", ls.path_loss},
                               {"aods_rad", ls.aods}});
        }
  return Json{{"num_fdcs", n_fdcs},
              {"users_per_fdc", k_users},
              {"links", links}};
}

inline LargeScaleCsi large_scale_from_json(const Json& j) {
  const int n_fdcs = j.at("num_fdcs").get<int>();
  const int k_users = j.at("users_per_fdc").get<int>();
  LargeScaleCsi csi(n_fdcs, k_users);
  for (const auto& link : j.at("links")) {
    const auto& rx = link.at("rx");
    const auto& tx = link.at("tx");
    LinkLargeScale& ls = csi.link(rx.at(0).get<int>(), rx.at(1).get<int>(),
                                  tx.at(0).get<int>(), tx.at(1).get<int>());
    ls.distance = link.at("distance_m").get<double>();
    ls.los = link.at("los").get<bool>();
    ls.shadowing_db = link.at("shadowing_db").get<double>();
    ls.path_loss = link.at("path_loss").get<double>();
    ls.aods = link.at("aods_rad").get<std::vector<double>>();
  }
  return csi;
}

inline Json to_json(const GainTensor& gains) {
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();
  Json tx = Json::array();
  for (int n = 0; n < n_fdcs; ++n)
    for (int k = 0; k < k_users; ++k)
      for (int l = 0; l < k_users; ++l)
        tx.push_back(gains.transmission(n, k, l));
  Json inter = Json::array();
  for (int n = 0; n < n_fdcs; ++n)
    for (int k = 0; k < k_users; ++k)
      for (int m = 0; m < n_fdcs; ++m) {
        if (m == n) continue;
        for (int i = 0; i < k_users; ++i)
          for (int l = 0; l < k_users; ++l)
            inter.push_back(gains.interference(n, k, m, i, l));
      }
  return Json{{"num_fdcs", n_fdcs},
              {"users_per_fdc", k_users},
              {"transmission", tx},
              {"interference", inter}};
}

inline GainTensor gain_tensor_from_json(const Json& j) {
  const int n_fdcs = j.at("num_fdcs").get<int>();
  const int k_users = j.at("users_per_fdc").get<int>();
  GainTensor gains(n_fdcs, k_users);
  const auto& tx = j.at("transmission");
  std::size_t pos = 0;
  for (int n = 0; n < n_fdcs; ++n)
    for (int k = 0; k < k_users; ++k)
      for (int l = 0; l < k_users; ++l)
        gains.transmission(n, k, l) = tx.at(pos++).get<double>();
  const auto& inter = j.at("interference");
  pos = 0;
  for (int n = 0; n < n_fdcs; ++n)
    for (int k = 0; k < k_users; ++k)
      for (int m = 0; m < n_fdcs; ++m) {
        if (m == n) continue;
        for (int i = 0; i < k_users; ++i)
          for (int l = 0; l < k_users; ++l)
            gains.interference(n, k, m, i, l) = inter.at(pos++).get<double>();
      }
  return gains;
}

inline Json to_json(const Allocation& alloc) {
  return Json(alloc.frb_user);
}

inline Allocation allocation_from_json(const Json& j) {
  Allocation alloc;
  alloc.frb_user = j.get<std::vector<std::vector<int>>>();
  return alloc;
}

inline Json to_json(const SolveReport& report) {
  return Json{
      {"allocation", to_json(report.allocation)},
      {"min_sinr_trace", report.min_sinr_trace},
      {"outer_iterations", report.outer_iterations},
      {"converged", report.converged},
      {"fallback_used", report.fallback_used},
      {"fdc_order", report.fdc_order},
      {"buildup_bisection_iterations", report.buildup_bisection_iterations},
      {"sweep_bisection_iterations", report.sweep_bisection_iterations},
      {"wall_ms", report.wall_ms},
  };
}

inline Json to_json(const CostMatrix& costs) {
  Json rows = Json::array();
  for (int r = 0; r < costs.size(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < costs.size(); ++c) row.push_back(costs.at(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline CostMatrix cost_matrix_from_json(const Json& j) {
  const int size = static_cast<int>(j.size());
  CostMatrix costs(size);
  for (int r = 0; r < size; ++r) {
    if (static_cast<int>(j.at(r).size()) != size)
      throw std::invalid_argument("cost matrix JSON is not square");
    for (int c = 0; c < size; ++c)
      costs.at(r, c) = j.at(r).at(c).get<double>();
  }
  return costs;
}

// Experiment spec files are either a bare SystemConfig (all campaign fields
// defaulted) or an object with a "config" key plus campaign fields.
inline ExperimentSpec experiment_spec_from_json(const Json& j) {
  ExperimentSpec spec;
  if (j.contains("config")) {
    spec.base = config_from_json(j.at("config"));
    if (j.contains("power_dbm"))
      spec.power_dbm = j.at("power_dbm").get<std::vector<double>>();
    spec.num_drops = j.value("drops", spec.num_drops);
    spec.realizations_per_drop =
        j.value("realizations", spec.realizations_per_drop);
    if (j.contains("schemes")) {
      spec.schemes.clear();
      for (const auto& name : j.at("schemes")) {
        const auto parsed = parse_scheme(name.get<std::string>());
        if (!parsed)
          throw std::invalid_argument(
              "unknown scheme \"" + name.get<std::string>() +
              "\" (known: greedy, exhaustive, single_fdc, orthogonal; other "
              "names are reserved for plug-in comparators)");
        spec.schemes.push_back(*parsed);
      }
    }
    spec.exhaustive_cap = j.value("exhaustive_cap", spec.exhaustive_cap);
    spec.output_path = j.value("output", spec.output_path);
  } else {
    spec.base = config_from_json(j);
  }
  return spec;
}

inline Json summary_to_json(const ExperimentResult& result) {
  Json rows = Json::array();
  for (const SchemeSummary& s : result.summary) {
    rows.push_back(Json{{"scheme", s.scheme},
                        {"power_dbm", s.power_dbm},
                        {"cells", s.cells},
                        {"mean_min_rate", s.mean_min_rate},
                        {"mean_sum_rate", s.mean_sum_rate},
                        {"mean_iterations", s.mean_iterations},
                        {"total_wall_ms", s.total_wall_ms}});
  }
  return Json{{"summary", rows}, {"warnings", result.warnings}};
}

}  // namespace mmcoord

#endif  // MMCOORD_JSON_IO_HPP_
