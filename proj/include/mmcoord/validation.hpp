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

#ifndef MMCOORD_VALIDATION_HPP_
#define MMCOORD_VALIDATION_HPP_

// Brute-force and sampling oracles used to cross-check the solvers. Each
// oracle recomputes its answer by direct enumeration or direct evaluation of
// the defining expression, deliberately avoiding the code paths it verifies;
// they back both the test suite and the `oracle` CLI subcommand.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmcoord/baselines.hpp"
#include "mmcoord/channel.hpp"
#include "mmcoord/config.hpp"
#include "mmcoord/coordinator.hpp"
#include "mmcoord/lbap.hpp"
#include "mmcoord/metrics.hpp"
#include "mmcoord/rng.hpp"

namespace mmcoord::validation {

// Minimum over all permutations of the largest selected cost, by direct
// scan. Exponential; sizes <= 8 stay cheap.
inline double brute_force_lbap_bottleneck(const CostMatrix& costs) {
  const int n = costs.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = -std::numeric_limits<double>::infinity();
    for (int col = 0; col < n; ++col)
      worst = std::max(worst, costs.at(perm[col], col));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// First permutation (lexicographic) satisfying every constraint family with
// exact comparisons: sum over selected cells of lhs <= rhs per column and
// family.
inline std::optional<std::vector<int>> enumerate_feasible_assignment(
    const FeasibilityCoefficients& fc) {
  std::vector<int> perm(fc.size);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int f = 0; f < fc.families && ok; ++f)
      for (int l = 0; l < fc.size && ok; ++l)
        ok = fc.lhs_at(f, perm[l], l) <= fc.rhs_at(f, l);
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Direct evaluation of the subsystem min-SINR for a candidate target
// assignment; mirrors the defining SINR expression term by term.
inline double direct_subsystem_min_sinr(const GainTensor& gains,
                                        const FixedAllocations& fixed,
                                        int target_fdc,
                                        const std::vector<int>& target,
                                        const SystemConfig& cfg) {
  const int k_users = gains.users_per_fdc();
  const double noise =
      cfg.num_antennas * cfg.noise_power / cfg.tx_power;

  double worst = std::numeric_limits<double>::infinity();
  // Fixed FDCs: peers plus the target interfere.
  for (const FixedAllocation& fa : fixed) {
    for (int l = 0; l < k_users; ++l) {
      const int user = fa.frb_user[l];
      double denom = noise;
      for (const FixedAllocation& other : fixed)
        if (other.fdc != fa.fdc)
          denom += gains.interference(fa.fdc, user, other.fdc,
                                      other.frb_user[l], l);
      denom += gains.interference(fa.fdc, user, target_fdc, target[l], l);
      worst = std::min(worst, gains.transmission(fa.fdc, user, l) / denom);
    }
  }
  // Target FDC: only the fixed FDCs interfere.
  for (int l = 0; l < k_users; ++l) {
    double denom = noise;
    for (const FixedAllocation& fa : fixed)
      denom += gains.interference(target_fdc, target[l], fa.fdc,
                                  fa.frb_user[l], l);
    worst = std::min(worst,
                     gains.transmission(target_fdc, target[l], l) / denom);
  }
  return worst;
}

// Exact max-min subproblem solution over all K! target assignments.
inline std::pair<std::vector<int>, double> brute_force_subproblem(
    const GainTensor& gains, const FixedAllocations& fixed, int target_fdc,
    const SystemConfig& cfg) {
  const int k_users = gains.users_per_fdc();
  std::vector<int> perm(k_users);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_min = -std::numeric_limits<double>::infinity();
  do {
    const double v =
        direct_subsystem_min_sinr(gains, fixed, target_fdc, perm, cfg);
    if (v > best_min) {
      best_min = v;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_min};
}

// Sampling estimate of the statistical interference gain: draw the victim's
// path fading, build its channel vector, and average |h^T w|^2 against the
// fixed interferer beam.
inline double monte_carlo_interference_gain(std::span<const Complex> beam,
                                            const LinkLargeScale& victim,
                                            const SystemConfig& cfg,
                                            RandomStream& rng, int draws) {
  std::vector<Complex> fading(victim.num_paths());
  double acc = 0.0;
  for (int d = 0; d < draws; ++d) {
    for (Complex& f : fading) f = rng.complex_normal();
    const std::vector<Complex> h = channel_vector(victim, fading, cfg);
    acc += transmission_gain(h, beam);
  }
  return acc / draws;
}

// --- random instances ------------------------------------------------------

inline CostMatrix random_cost_matrix(int size, RandomStream& rng) {
  CostMatrix costs(size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) costs.at(r, c) = rng.uniform(-5.0, 5.0);
  return costs;
}

inline FeasibilityCoefficients random_feasibility_instance(int families,
                                                           int size,
                                                           RandomStream& rng) {
  FeasibilityCoefficients fc;
  fc.resize(families, size);
  for (double& v : fc.lhs) v = rng.uniform(-2.0, 2.0);
  for (double& v : fc.rhs) v = rng.uniform(-1.0, 3.0);
  fc.shift = choose_shift(fc.min_coefficient());
  return fc;
}

// Synthetic gain tensor with log-uniform spreads; physical enough for solver
// cross-checks without running the channel model.
inline GainTensor random_gain_tensor(int num_fdcs, int users_per_fdc,
                                     RandomStream& rng,
                                     double interference_scale = 0.2) {
  GainTensor gains(num_fdcs, users_per_fdc);
  for (int n = 0; n < num_fdcs; ++n)
    for (int k = 0; k < users_per_fdc; ++k)
      for (int l = 0; l < users_per_fdc; ++l)
        gains.transmission(n, k, l) =
            std::pow(10.0, rng.uniform(-1.0, 1.0));
  for (int n = 0; n < num_fdcs; ++n)
    for (int k = 0; k < users_per_fdc; ++k)
      for (int m = 0; m < num_fdcs; ++m) {
        if (m == n) continue;
        for (int i = 0; i < users_per_fdc; ++i)
          for (int l = 0; l < users_per_fdc; ++l)
            gains.interference(n, k, m, i, l) =
                interference_scale * std::pow(10.0, rng.uniform(-2.0, 0.5));
      }
  return gains;
}

// --- self-check suite (backs the `oracle` CLI subcommand) ------------------

struct SelfCheckReport {
  int checks = 0;
  int failures = 0;
  std::vector<std::string> lines;
};

inline SelfCheckReport run_self_checks(std::uint64_t seed, int trials,
                                       std::uint64_t cap) {
  SelfCheckReport report;
  RandomStream rng(seed);
  auto record = [&](bool ok, const std::string& what) {
    ++report.checks;
    if (!ok) ++report.failures;
    report.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  };

  SystemConfig cfg;
  cfg.num_antennas = 8;
  cfg.noise_power = 1e-3;
  cfg.tx_power = 1.0;

  // Bottleneck solver vs direct permutation scan, exact.
  {
    int bad = 0;
    for (int t = 0; t < trials; ++t) {
      const int size = 2 + static_cast<int>(rng.uniform01() * 5.0);
      const CostMatrix costs = random_cost_matrix(std::min(size, 6), rng);
      if (solve_lbap(costs).bottleneck != brute_force_lbap_bottleneck(costs))
        ++bad;
    }
    record(bad == 0, "bottleneck assignment matches direct enumeration (" +
                         std::to_string(trials) + " instances)");
  }

  // Feasibility reduction vs direct constraint scan.
  {
    int bad = 0;
    for (int t = 0; t < trials; ++t) {
      const int families = 1 + static_cast<int>(rng.uniform01() * 3.0);
      const int size = 2 + static_cast<int>(rng.uniform01() * 3.0);
      const FeasibilityCoefficients fc =
          random_feasibility_instance(families, std::min(size, 4), rng);
      const bool direct = enumerate_feasible_assignment(fc).has_value();
      const FeasibilityVerdict verdict = check_feasibility(fc);
      if (direct != verdict.feasible) ++bad;
      if (verdict.feasible) {
        // The returned witness must itself satisfy every family (allowing
        // the documented slack on the collapsed ratio test).
        const std::vector<int>& w = *verdict.witness;
        for (int f = 0; f < fc.families; ++f)
          for (int l = 0; l < fc.size; ++l)
            if (fc.lhs_at(f, w[l], l) >
                fc.rhs_at(f, l) +
                    kFeasibilitySlack * (fc.shift + fc.rhs_at(f, l)))
              ++bad;
      }
    }
    record(bad == 0, "feasibility reduction agrees with direct constraint "
                     "scan (" + std::to_string(trials) + " instances)");
  }

  // Bisection subproblem vs exhaustive max-min over target assignments.
  {
    int bad = 0;
    for (int t = 0; t < trials; ++t) {
      SystemConfig local = cfg;
      local.num_fdcs = 3;
      local.users_per_fdc = 3;
      const GainTensor gains = random_gain_tensor(3, 3, rng);
      FixedAllocations fixed;
      fixed.push_back({0, {0, 1, 2}});
      fixed.push_back({1, {2, 0, 1}});
      const BisectionOutcome outcome =
          solve_subproblem(gains, fixed, 2, local);
      const auto [best, best_min] =
          brute_force_subproblem(gains, fixed, 2, local);
      const double achieved = direct_subsystem_min_sinr(
          gains, fixed, 2, outcome.frb_user, local);
      const double tol = local.bisection_tol * (1.0 + local.bisection_tol);
      if (achieved < best_min * (1.0 - tol) - 1e-15) ++bad;
    }
    record(bad == 0, "bisection subproblem reaches the enumerated optimum "
                     "within tolerance (" + std::to_string(trials) +
                     " instances)");
  }

  // Greedy never beats the exact search on the same tensor.
  {
    int bad = 0;
    const int drops = std::max(1, trials / 5);
    for (int t = 0; t < drops; ++t) {
      SystemConfig local = cfg;
      local.num_fdcs = 3;
      local.users_per_fdc = 3;
      const GainTensor gains = random_gain_tensor(3, 3, rng);
      if (exhaustive_search_size(3, 3) > cap) continue;
      const SolveReport greedy = solve_greedy(gains, local);
      const Allocation exact = solve_exhaustive(gains, local, cap);
      const double g = min_sinr(sinr_table(gains, greedy.allocation, local));
      const double e = min_sinr(sinr_table(gains, exact, local));
      if (g > e * (1.0 + 1e-9)) ++bad;
    }
    record(bad == 0, "greedy min-SINR never exceeds the exact optimum (" +
                         std::to_string(drops) + " tensors)");
  }

  return report;
}

}  // namespace mmcoord::validation

#endif  // MMCOORD_VALIDATION_HPP_
