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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mmcoord/baselines.hpp"
#include "mmcoord/coordinator.hpp"
#include "mmcoord/metrics.hpp"
#include "mmcoord/rng.hpp"
#include "mmcoord/validation.hpp"

using mmcoord::Allocation;
using mmcoord::GainTensor;
using mmcoord::OrthogonalResult;
using mmcoord::RandomStream;
using mmcoord::SystemConfig;
using mmcoord::eval_orthogonal;
using mmcoord::exhaustive_search_size;
using mmcoord::min_rate;
using mmcoord::min_sinr;
using mmcoord::rate_from_sinr;
using mmcoord::sinr_table;
using mmcoord::solve_exhaustive;
using mmcoord::solve_greedy;
using mmcoord::solve_single_fdc;
using mmcoord::sum_rate;

namespace {

SystemConfig solver_config(int n_fdcs, int k_users) {
  SystemConfig cfg;
  cfg.num_fdcs = n_fdcs;
  cfg.users_per_fdc = k_users;
  cfg.num_antennas = 8;
  cfg.noise_power = 1e-3;
  cfg.tx_power = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("search-space size saturates instead of overflowing",
          "[baselines]") {
  REQUIRE(exhaustive_search_size(1, 3) == 6);
  REQUIRE(exhaustive_search_size(3, 3) == 216);
  REQUIRE(exhaustive_search_size(2, 4) == 576);
  REQUIRE(exhaustive_search_size(10, 10) ==
          std::numeric_limits<std::uint64_t>::max());
  REQUIRE(exhaustive_search_size(1, 30) ==
          std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("exact search refuses oversized instances", "[baselines]") {
  const SystemConfig cfg = solver_config(2, 3);
  RandomStream rng(61);
  const GainTensor gains = mmcoord::validation::random_gain_tensor(2, 3, rng);
  REQUIRE_THROWS_AS(solve_exhaustive(gains, cfg, 35), std::runtime_error);
  REQUIRE_NOTHROW(solve_exhaustive(gains, cfg, 36));
}

TEST_CASE("lone-cluster exact search equals the bottleneck optimum",
          "[baselines]") {
  RandomStream rng(67);
  const SystemConfig cfg = solver_config(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const GainTensor gains =
        mmcoord::validation::random_gain_tensor(1, 4, rng);
    const Allocation exact = solve_exhaustive(gains, cfg);
    const Allocation greedy_free = solve_single_fdc(gains, cfg);
    REQUIRE(min_sinr(sinr_table(gains, exact, cfg)) ==
            Catch::Approx(min_sinr(sinr_table(gains, greedy_free, cfg)))
                .epsilon(1e-14));
  }
}

TEST_CASE("exact search avoids co-scheduling the dominant interferer",
          "[baselines]") {
  const SystemConfig cfg = solver_config(2, 2);
  GainTensor gains(2, 2);
  for (int n = 0; n < 2; ++n)
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) gains.transmission(n, k, l) = 10.0;
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l)
          gains.interference(n, k, 1 - n, i, l) = 0.1;
    }
  // One crushing link: BS 0 of cluster 1 into user 0 of cluster 0.
  for (int l = 0; l < 2; ++l) gains.interference(0, 0, 1, 0, l) = 9.0;

  const Allocation best = solve_exhaustive(gains, cfg);
  int frb_of_victim = -1;
  int frb_of_source = -1;
  for (int l = 0; l < 2; ++l) {
    if (best.frb_user[0][l] == 0) frb_of_victim = l;
    if (best.frb_user[1][l] == 0) frb_of_source = l;
  }
  REQUIRE(frb_of_victim != frb_of_source);

  // Deterministic tie-break: the first optimal tuple in enumeration order.
  REQUIRE(best.frb_user[0] == std::vector<int>{0, 1});
  REQUIRE(best.frb_user[1] == std::vector<int>{1, 0});
}

TEST_CASE("greedy never beats the exact search", "[baselines]") {
  RandomStream rng(71);
  const SystemConfig cfg = solver_config(3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const GainTensor gains =
        mmcoord::validation::random_gain_tensor(3, 3, rng);
    const double greedy =
        min_sinr(sinr_table(gains, solve_greedy(gains, cfg).allocation, cfg));
    const double exact =
        min_sinr(sinr_table(gains, solve_exhaustive(gains, cfg), cfg));
    REQUIRE(greedy <= exact * (1.0 + 1e-9));
  }
}

TEST_CASE("uncoordinated clusters solve their own bottleneck exactly",
          "[baselines]") {
  RandomStream rng(73);
  const SystemConfig cfg = solver_config(3, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const GainTensor gains =
        mmcoord::validation::random_gain_tensor(3, 4, rng);
    const Allocation alloc = solve_single_fdc(gains, cfg);
    REQUIRE(alloc.valid(3, 4));

    for (int n = 0; n < 3; ++n) {
      double achieved = std::numeric_limits<double>::infinity();
      for (int l = 0; l < 4; ++l)
        achieved =
            std::min(achieved, gains.transmission(n, alloc.frb_user[n][l], l));

      std::vector<int> perm(4);
      std::iota(perm.begin(), perm.end(), 0);
      double best = 0.0;
      do {
        double worst = std::numeric_limits<double>::infinity();
        for (int l = 0; l < 4; ++l)
          worst = std::min(worst, gains.transmission(n, perm[l], l));
        best = std::max(best, worst);
      } while (std::next_permutation(perm.begin(), perm.end()));

      REQUIRE(achieved == best);
    }
  }
}

TEST_CASE("interference-free coordination matches the uncoordinated result",
          "[baselines]") {
  RandomStream rng(79);
  const SystemConfig cfg = solver_config(3, 3);
  GainTensor gains = mmcoord::validation::random_gain_tensor(3, 3, rng, 0.0);
  // Zero every cross gain: coordination has nothing to coordinate.
  for (int n = 0; n < 3; ++n)
    for (int k = 0; k < 3; ++k)
      for (int m = 0; m < 3; ++m) {
        if (m == n) continue;
        for (int i = 0; i < 3; ++i)
          for (int l = 0; l < 3; ++l) gains.interference(n, k, m, i, l) = 0.0;
      }

  const double uncoordinated =
      min_sinr(sinr_table(gains, solve_single_fdc(gains, cfg), cfg));
  const double coordinated =
      min_sinr(sinr_table(gains, solve_greedy(gains, cfg).allocation, cfg));
  REQUIRE(coordinated <= uncoordinated * (1.0 + 1e-12));
  REQUIRE(coordinated >= uncoordinated * (1.0 - 5.0 * cfg.bisection_tol));
}

TEST_CASE("orthogonal reference divides the band evenly", "[baselines]") {
  RandomStream rng(83);
  const SystemConfig cfg = solver_config(3, 2);
  const GainTensor gains = mmcoord::validation::random_gain_tensor(3, 2, rng);
  const OrthogonalResult orth = eval_orthogonal(gains, cfg);
  REQUIRE(orth.allocation.valid(3, 2));

  const double noise = cfg.noise_over_power();
  double expected_sum = 0.0;
  double expected_min = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 3; ++n)
    for (int l = 0; l < 2; ++l) {
      const int user = orth.allocation.frb_user[n][l];
      const double share =
          rate_from_sinr(gains.transmission(n, user, l) / noise) / 3.0;
      expected_sum += share;
      expected_min = std::min(expected_min, share);
    }
  REQUIRE(orth.sum_rate == Catch::Approx(expected_sum).epsilon(1e-13));
  REQUIRE(orth.min_rate == Catch::Approx(expected_min).epsilon(1e-13));
}

TEST_CASE("lone-cluster orthogonal equals the interference-free table",
          "[baselines]") {
  RandomStream rng(89);
  const SystemConfig cfg = solver_config(1, 3);
  const GainTensor gains = mmcoord::validation::random_gain_tensor(1, 3, rng);
  const OrthogonalResult orth = eval_orthogonal(gains, cfg);
  const auto table = sinr_table(gains, orth.allocation, cfg);
  REQUIRE(orth.min_rate == Catch::Approx(min_rate(table)).epsilon(1e-13));
  REQUIRE(orth.sum_rate == Catch::Approx(sum_rate(table)).epsilon(1e-13));
}
