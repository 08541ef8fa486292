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

#ifndef MMCOORD_BASELINES_HPP_
#define MMCOORD_BASELINES_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmcoord/channel.hpp"
#include "mmcoord/config.hpp"
#include "mmcoord/lbap.hpp"
#include "mmcoord/metrics.hpp"

namespace mmcoord {

inline constexpr std::uint64_t kDefaultExhaustiveCap = 1'000'000;

// Number of candidate allocations of the exact search, (K!)^N, saturated at
// the uint64 maximum.
inline std::uint64_t exhaustive_search_size(int num_fdcs, int users_per_fdc) {
  const std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t factorial = 1;
  for (int i = 2; i <= users_per_fdc; ++i) {
    if (factorial > inf / i) return inf;
    factorial *= i;
  }
  std::uint64_t total = 1;
  for (int n = 0; n < num_fdcs; ++n) {
    if (factorial != 0 && total > inf / factorial) return inf;
    total *= factorial;
  }
  return total;
}

// Exact max-min baseline: enumerates every combination of per-FDC FRB
// permutations in lexicographic order and keeps the first allocation that
// attains the best system min-SINR. Refuses instances whose search space
// exceeds `cap`.
inline Allocation solve_exhaustive(const GainTensor& gains,
                                   const SystemConfig& cfg,
                                   std::uint64_t cap = kDefaultExhaustiveCap) {
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();
  const std::uint64_t total = exhaustive_search_size(n_fdcs, k_users);
  if (total > cap)
    throw std::runtime_error(
        "solve_exhaustive: search space of " +
        (total == std::numeric_limits<std::uint64_t>::max()
             ? std::string(">= 2^64")
             : std::to_string(total)) +
        " allocations exceeds the cap of " + std::to_string(cap));

  std::vector<std::vector<int>> perms;
  {
    std::vector<int> perm(k_users);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  const double noise = cfg.noise_over_power();
  auto evaluate = [&](const std::vector<int>& choice) {
    double worst = std::numeric_limits<double>::infinity();
    for (int n = 0; n < n_fdcs; ++n) {
      const std::vector<int>& own = perms[choice[n]];
      for (int l = 0; l < k_users; ++l) {
        double denom = noise;
        for (int m = 0; m < n_fdcs; ++m) {
          if (m == n) continue;
          denom += gains.interference(n, own[l], m, perms[choice[m]][l], l);
        }
        worst = std::min(worst, gains.transmission(n, own[l], l) / denom);
      }
    }
    return worst;
  };

  std::vector<int> choice(n_fdcs, 0);
  std::vector<int> best_choice = choice;
  double best_min = evaluate(choice);
  const int n_perms = static_cast<int>(perms.size());
  while (true) {
    // Odometer increment, last FDC fastest: lexicographic over the tuple.
    int position = n_fdcs - 1;
    while (position >= 0 && choice[position] == n_perms - 1)
      choice[position--] = 0;
    if (position < 0) break;
    ++choice[position];

    const double value = evaluate(choice);
    if (value > best_min) {
      best_min = value;
      best_choice = choice;
    }
  }

  Allocation alloc;
  alloc.frb_user.reserve(n_fdcs);
  for (int n = 0; n < n_fdcs; ++n) alloc.frb_user.push_back(perms[best_choice[n]]);
  return alloc;
}

// Uncoordinated baseline: every FDC maximizes its own worst transmission
// gain over its FRB permutations (a bottleneck assignment on negated gains)
// and ignores what the other FDCs do.
inline Allocation solve_single_fdc(const GainTensor& gains,
                                   const SystemConfig& cfg) {
  (void)cfg;
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();
  Allocation alloc;
  alloc.frb_user.reserve(n_fdcs);
  for (int n = 0; n < n_fdcs; ++n) {
    CostMatrix costs(k_users);
    for (int k = 0; k < k_users; ++k)
      for (int l = 0; l < k_users; ++l)
        costs.at(k, l) = -gains.transmission(n, k, l);
    alloc.frb_user.push_back(solve_lbap(costs).row_of_col);
  }
  return alloc;
}

struct OrthogonalResult {
  Allocation allocation;
  double min_rate = 0.0;
  double sum_rate = 0.0;
};

// Interference-free reference: FDCs get disjoint spectrum, so each user sees
// pure SNR but only a 1/N share of the bandwidth. Uses the per-FDC
// bottleneck assignment; any permutation of an interference-free FDC only
// reshuffles which user takes which share.
inline OrthogonalResult eval_orthogonal(const GainTensor& gains,
                                        const SystemConfig& cfg) {
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();
  const double noise = cfg.noise_over_power();

  OrthogonalResult result;
  result.allocation = solve_single_fdc(gains, cfg);
  result.min_rate = std::numeric_limits<double>::infinity();
  for (int n = 0; n < n_fdcs; ++n) {
    for (int l = 0; l < k_users; ++l) {
      const int user = result.allocation.frb_user[n][l];
      const double snr = gains.transmission(n, user, l) / noise;
      const double share = rate_from_sinr(snr) / n_fdcs;
      result.min_rate = std::min(result.min_rate, share);
      result.sum_rate += share;
    }
  }
  return result;
}

}  // namespace mmcoord

#endif  // MMCOORD_BASELINES_HPP_
