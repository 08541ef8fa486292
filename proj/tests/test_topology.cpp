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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "mmcoord/config.hpp"
#include "mmcoord/rng.hpp"
#include "mmcoord/topology.hpp"

using mmcoord::LargeScaleCsi;
using mmcoord::LinkLargeScale;
using mmcoord::LosMode;
using mmcoord::PathLossParams;
using mmcoord::RandomStream;
using mmcoord::SystemConfig;
using mmcoord::Topology;
using mmcoord::db_to_linear;
using mmcoord::draw_large_scale;
using mmcoord::generate_topology;
using mmcoord::path_loss_db;

namespace {

SystemConfig small_config(int n_fdcs, int k_users) {
  SystemConfig cfg;
  cfg.num_fdcs = n_fdcs;
  cfg.users_per_fdc = k_users;
  return cfg;
}

}  // namespace

TEST_CASE("zero-radius deployment collapses to the origin", "[topology]") {
  SystemConfig cfg = small_config(1, 1);
  cfg.area_radius = 0.0;
  cfg.serving_radius = 0.0;
  RandomStream rng(1);
  const Topology topo = generate_topology(cfg, rng);
  REQUIRE(topo.pairs() == 1);
  REQUIRE(topo.bs(0, 0).x == 0.0);
  REQUIRE(topo.bs(0, 0).y == 0.0);
  REQUIRE(topo.user(0, 0).x == 0.0);
  REQUIRE(topo.user(0, 0).y == 0.0);

  // Coincident endpoints get clamped to the distance floor before path loss.
  RandomStream rng2(2);
  const LargeScaleCsi csi = draw_large_scale(cfg, topo, rng2);
  REQUIRE(csi.serving(0, 0).distance == cfg.min_link_distance);
}

TEST_CASE("same seed reproduces the same drop", "[topology]") {
  const SystemConfig cfg = small_config(10, 3);
  RandomStream a(77);
  RandomStream b(77);
  const Topology ta = generate_topology(cfg, a);
  const Topology tb = generate_topology(cfg, b);
  REQUIRE(ta.bs_positions.size() == tb.bs_positions.size());
  for (int p = 0; p < ta.pairs(); ++p) {
    REQUIRE(ta.bs_positions[p].x == tb.bs_positions[p].x);
    REQUIRE(ta.bs_positions[p].y == tb.bs_positions[p].y);
    REQUIRE(ta.user_positions[p].x == tb.user_positions[p].x);
    REQUIRE(ta.user_positions[p].y == tb.user_positions[p].y);
  }

  const LargeScaleCsi ca = draw_large_scale(cfg, ta, a);
  const LargeScaleCsi cb = draw_large_scale(cfg, tb, b);
  for (int n = 0; n < cfg.num_fdcs; ++n)
    for (int k = 0; k < cfg.users_per_fdc; ++k) {
      const LinkLargeScale& la = ca.link(n, k, (n + 1) % cfg.num_fdcs, 0);
      const LinkLargeScale& lb = cb.link(n, k, (n + 1) % cfg.num_fdcs, 0);
      REQUIRE(la.path_loss == lb.path_loss);
      REQUIRE(la.los == lb.los);
      REQUIRE(la.aods == lb.aods);
    }
}

TEST_CASE("counts, bounds, and serving distance hold on a small drop",
          "[topology]") {
  SystemConfig cfg = small_config(2, 2);
  cfg.area_radius = 500.0;
  cfg.serving_radius = 50.0;
  RandomStream rng(5);
  const Topology topo = generate_topology(cfg, rng);

  REQUIRE(topo.num_fdcs == 2);
  REQUIRE(topo.users_per_fdc == 2);
  REQUIRE(static_cast<int>(topo.bs_positions.size()) == 4);
  REQUIRE(static_cast<int>(topo.user_positions.size()) == 4);
  for (int p = 0; p < topo.pairs(); ++p) {
    REQUIRE(std::hypot(topo.bs_positions[p].x, topo.bs_positions[p].y) <=
            500.0 + 1e-9);
    REQUIRE(std::hypot(topo.user_positions[p].x, topo.user_positions[p].y) <=
            500.0 + 1e-9);
    REQUIRE(mmcoord::distance(topo.bs_positions[p], topo.user_positions[p]) <=
            cfg.serving_radius + 1e-9);
  }
}

TEST_CASE("clusters group nearby base stations", "[topology]") {
  // With many pairs, a BS should on average sit closer to its own FDC's
  // members than to the rest; checked in aggregate, not per drop.
  SystemConfig cfg = small_config(10, 3);
  RandomStream rng(31);
  const Topology topo = generate_topology(cfg, rng);
  double within = 0.0;
  int within_n = 0;
  double across = 0.0;
  int across_n = 0;
  for (int p = 0; p < topo.pairs(); ++p)
    for (int q = p + 1; q < topo.pairs(); ++q) {
      const double d =
          mmcoord::distance(topo.bs_positions[p], topo.bs_positions[q]);
      if (topo.fdc_of_pair(p) == topo.fdc_of_pair(q)) {
        within += d;
        ++within_n;
      } else {
        across += d;
        ++across_n;
      }
    }
  REQUIRE(within / within_n < across / across_n);
}

TEST_CASE("path loss hits the published LOS and NLOS anchors", "[topology]") {
  const PathLossParams los{61.4, 2.0, 5.8};
  const PathLossParams nlos{72.0, 2.92, 8.7};
  REQUIRE(path_loss_db(los, 100.0, 0.0) == Catch::Approx(101.4).epsilon(1e-13));
  REQUIRE(db_to_linear(path_loss_db(los, 100.0, 0.0)) ==
          Catch::Approx(std::pow(10.0, 10.14)).epsilon(1e-12));
  REQUIRE(path_loss_db(nlos, 1.0, 0.0) == Catch::Approx(72.0).epsilon(1e-13));
  REQUIRE(db_to_linear(path_loss_db(nlos, 1.0, 0.0)) ==
          Catch::Approx(std::pow(10.0, 7.2)).epsilon(1e-12));
}

TEST_CASE("path loss grows with distance at fixed class", "[topology]") {
  const PathLossParams los{61.4, 2.0, 5.8};
  double prev = 0.0;
  for (double d : {1.0, 3.0, 10.0, 55.0, 200.0, 499.0}) {
    const double eta = db_to_linear(path_loss_db(los, d, 0.0));
    REQUIRE(eta > prev);
    prev = eta;
  }
}

TEST_CASE("drawn links obey the class formula and angle ranges",
          "[topology]") {
  SystemConfig cfg = small_config(3, 3);
  RandomStream rng(9);
  const Topology topo = generate_topology(cfg, rng);
  const LargeScaleCsi csi = draw_large_scale(cfg, topo, rng);

  for (int n = 0; n < 3; ++n)
    for (int k = 0; k < 3; ++k)
      for (int m = 0; m < 3; ++m)
        for (int i = 0; i < 3; ++i) {
          const LinkLargeScale& link = csi.link(n, k, m, i);
          REQUIRE(link.num_paths() == cfg.num_paths);
          for (double aod : link.aods) {
            REQUIRE(aod >= 0.0);
            REQUIRE(aod < 2.0 * std::numbers::pi);
          }
          const PathLossParams& p =
              link.los ? cfg.pathloss_los : cfg.pathloss_nlos;
          const double expected = db_to_linear(
              path_loss_db(p, link.distance, link.shadowing_db));
          REQUIRE(link.path_loss == Catch::Approx(expected).epsilon(1e-12));
          REQUIRE(link.distance >= cfg.min_link_distance);
        }
}

TEST_CASE("forced line-of-sight modes classify every link", "[topology]") {
  SystemConfig cfg = small_config(2, 2);
  RandomStream rng(3);
  const Topology topo = generate_topology(cfg, rng);

  cfg.los_mode = LosMode::kAllLos;
  const LargeScaleCsi all_los = draw_large_scale(cfg, topo, rng);
  cfg.los_mode = LosMode::kAllNlos;
  const LargeScaleCsi all_nlos = draw_large_scale(cfg, topo, rng);
  for (int n = 0; n < 2; ++n)
    for (int k = 0; k < 2; ++k)
      for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 2; ++i) {
          REQUIRE(all_los.link(n, k, m, i).los);
          REQUIRE_FALSE(all_nlos.link(n, k, m, i).los);
        }
}

TEST_CASE("line-of-sight probability decays with distance", "[topology]") {
  // Aggregate over many drawn links: short links should be LOS far more
  // often than long ones under the exponential-decay rule.
  SystemConfig cfg = small_config(6, 3);
  cfg.area_radius = 400.0;
  RandomStream rng(15);
  int short_los = 0, short_n = 0, long_los = 0, long_n = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const Topology topo = generate_topology(cfg, rng);
    const LargeScaleCsi csi = draw_large_scale(cfg, topo, rng);
    for (int n = 0; n < cfg.num_fdcs; ++n)
      for (int k = 0; k < cfg.users_per_fdc; ++k)
        for (int m = 0; m < cfg.num_fdcs; ++m)
          for (int i = 0; i < cfg.users_per_fdc; ++i) {
            const LinkLargeScale& link = csi.link(n, k, m, i);
            if (link.distance < 40.0) {
              ++short_n;
              short_los += link.los;
            } else if (link.distance > 250.0) {
              ++long_n;
              long_los += link.los;
            }
          }
  }
  REQUIRE(short_n > 100);
  REQUIRE(long_n > 100);
  REQUIRE(static_cast<double>(short_los) / short_n >
          static_cast<double>(long_los) / long_n + 0.2);
}

TEST_CASE("empirical shadowing spread matches the configured deviation",
          "[topology]") {
  SystemConfig cfg = small_config(10, 3);
  cfg.los_mode = LosMode::kAllNlos;  // one class, one deviation
  RandomStream rng(21);
  double sum = 0.0;
  double sq = 0.0;
  long count = 0;
  const Topology topo = generate_topology(cfg, rng);
  while (count < 120000) {
    const LargeScaleCsi csi = draw_large_scale(cfg, topo, rng);
    for (int n = 0; n < cfg.num_fdcs; ++n)
      for (int k = 0; k < cfg.users_per_fdc; ++k)
        for (int m = 0; m < cfg.num_fdcs; ++m)
          for (int i = 0; i < cfg.users_per_fdc; ++i) {
            const double x = csi.link(n, k, m, i).shadowing_db;
            sum += x;
            sq += x * x;
            ++count;
          }
  }
  const double mean = sum / count;
  const double std = std::sqrt(sq / count - mean * mean);
  REQUIRE(std == Catch::Approx(cfg.pathloss_nlos.shadow_std_db).epsilon(0.02));
  REQUIRE(std::abs(mean) < 0.1);
}

TEST_CASE("configuration validation rejects broken inputs", "[topology]") {
  SystemConfig cfg;
  cfg.num_fdcs = 0;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SystemConfig{};
  cfg.bisection_tol = 1.5;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SystemConfig{};
  cfg.noise_power = 0.0;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SystemConfig{};
  REQUIRE_NOTHROW(cfg.validate());

  // Mismatched topology/config pairs are rejected before drawing links.
  RandomStream rng(4);
  const Topology topo = generate_topology(small_config(2, 2), rng);
  REQUIRE_THROWS_AS(draw_large_scale(small_config(3, 2), topo, rng),
                    std::invalid_argument);
}
