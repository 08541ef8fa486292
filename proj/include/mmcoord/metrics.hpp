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

#ifndef MMCOORD_METRICS_HPP_
#define MMCOORD_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mmcoord/channel.hpp"
#include "mmcoord/config.hpp"

namespace mmcoord {

// FRB schedule of the whole network: frb_user[n][l] is the user of FDC n
// scheduled on FRB l. Each per-FDC row must be a permutation — every user
// takes exactly one FRB.
struct Allocation {
  std::vector<std::vector<int>> frb_user;

  static Allocation identity(int num_fdcs, int users_per_fdc) {
    Allocation a;
    a.frb_user.assign(num_fdcs, std::vector<int>(users_per_fdc));
    for (auto& row : a.frb_user)
      for (int l = 0; l < users_per_fdc; ++l) row[l] = l;
    return a;
  }

  bool valid(int num_fdcs, int users_per_fdc) const {
    if (static_cast<int>(frb_user.size()) != num_fdcs) return false;
    std::vector<char> seen(users_per_fdc);
    for (const auto& row : frb_user) {
      if (static_cast<int>(row.size()) != users_per_fdc) return false;
      std::fill(seen.begin(), seen.end(), 0);
      for (int user : row) {
        if (user < 0 || user >= users_per_fdc || seen[user]) return false;
        seen[user] = 1;
      }
    }
    return true;
  }
};

// Per-(FDC, FRB) SINRs and spectral efficiencies of one allocation.
struct SinrTable {
  int num_fdcs = 0;
  int users_per_fdc = 0;
  std::vector<double> sinr;  // [n][l], linear
  std::vector<double> rate;  // [n][l], bit/s/Hz

  double sinr_at(int fdc, int frb) const {
    return sinr[static_cast<std::size_t>(fdc) * users_per_fdc + frb];
  }
  double rate_at(int fdc, int frb) const {
    return rate[static_cast<std::size_t>(fdc) * users_per_fdc + frb];
  }
};

inline double rate_from_sinr(double sinr) {
  return std::log1p(sinr) / std::numbers::ln2;
}

// SINR of every scheduled user: transmission gain over the sum of
// statistical interference gains from the co-FRB BSs of other FDCs plus the
// power-normalized noise term.
inline SinrTable sinr_table(const GainTensor& gains, const Allocation& alloc,
                            const SystemConfig& cfg) {
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();
  if (!alloc.valid(n_fdcs, k_users))
    throw std::invalid_argument("sinr_table: allocation is not a per-FDC "
                                "permutation of the FRBs");

  const double noise = cfg.noise_over_power();
  SinrTable table;
  table.num_fdcs = n_fdcs;
  table.users_per_fdc = k_users;
  table.sinr.resize(static_cast<std::size_t>(n_fdcs) * k_users);
  table.rate.resize(table.sinr.size());
  for (int n = 0; n < n_fdcs; ++n) {
    for (int l = 0; l < k_users; ++l) {
      const int user = alloc.frb_user[n][l];
      double denom = noise;
      for (int m = 0; m < n_fdcs; ++m) {
        if (m == n) continue;
        denom += gains.interference(n, user, m, alloc.frb_user[m][l], l);
      }
      const double s = gains.transmission(n, user, l) / denom;
      table.sinr[static_cast<std::size_t>(n) * k_users + l] = s;
      table.rate[static_cast<std::size_t>(n) * k_users + l] =
          rate_from_sinr(s);
    }
  }
  return table;
}

inline double min_sinr(const SinrTable& table) {
  return *std::min_element(table.sinr.begin(), table.sinr.end());
}

inline double min_rate(const SinrTable& table) {
  return *std::min_element(table.rate.begin(), table.rate.end());
}

inline double sum_rate(const SinrTable& table) {
  double total = 0.0;
  for (double r : table.rate) total += r;
  return total;
}

// Average received interference power each FDC would collect from every
// other FDC's BSs, in watts, averaged over FRBs. This is the key the greedy
// coordinator sorts on: the most-interfered FDC is handled first.
inline std::vector<double> fdc_interference_power(const GainTensor& gains,
                                                  const SystemConfig& cfg) {
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();
  const double power_per_antenna = cfg.tx_power / cfg.num_antennas;
  std::vector<double> poi(n_fdcs, 0.0);
  for (int n = 0; n < n_fdcs; ++n) {
    double total = 0.0;
    for (int l = 0; l < k_users; ++l)
      for (int k = 0; k < k_users; ++k)
        for (int m = 0; m < n_fdcs; ++m) {
          if (m == n) continue;
          for (int i = 0; i < k_users; ++i)
            total += gains.interference(n, k, m, i, l) * power_per_antenna;
        }
    poi[n] = total / k_users;
  }
  return poi;
}

}  // namespace mmcoord

#endif  // MMCOORD_METRICS_HPP_
