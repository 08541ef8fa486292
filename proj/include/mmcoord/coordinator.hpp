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

#ifndef MMCOORD_COORDINATOR_HPP_
#define MMCOORD_COORDINATOR_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mmcoord/channel.hpp"
#include "mmcoord/config.hpp"
#include "mmcoord/lbap.hpp"
#include "mmcoord/metrics.hpp"
#include "mmcoord/rng.hpp"

namespace mmcoord {

// One FDC whose FRB assignment is held fixed while another FDC is optimized.
struct FixedAllocation {
  int fdc = 0;
  std::vector<int> frb_user;
};
using FixedAllocations = std::vector<FixedAllocation>;

// Brackets below which the relative bisection stop switches to an absolute
// one, so a vanishing lower bound cannot stall the loop.
inline constexpr double kTinySinr = 1e-30;

namespace detail {

inline void check_subproblem_args(const GainTensor& gains,
                                  const FixedAllocations& fixed,
                                  int target_fdc) {
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();
  if (target_fdc < 0 || target_fdc >= n_fdcs)
    throw std::invalid_argument("subproblem: target FDC out of range");
  std::vector<char> seen(n_fdcs, 0);
  seen[target_fdc] = 1;
  for (const FixedAllocation& fa : fixed) {
    if (fa.fdc < 0 || fa.fdc >= n_fdcs)
      throw std::invalid_argument("subproblem: fixed FDC out of range");
    if (seen[fa.fdc])
      throw std::invalid_argument("subproblem: FDC listed twice");
    seen[fa.fdc] = 1;
    if (static_cast<int>(fa.frb_user.size()) != k_users)
      throw std::invalid_argument("subproblem: fixed assignment has wrong size");
    std::vector<char> used(k_users, 0);
    for (int user : fa.frb_user) {
      if (user < 0 || user >= k_users || used[user])
        throw std::invalid_argument(
            "subproblem: fixed assignment is not a permutation");
      used[user] = 1;
    }
  }
}

}  // namespace detail

// Linearized feasibility system asking: can the target FDC be assigned FRBs
// so that every user of the subsystem (the fixed FDCs plus the target)
// reaches `sinr_target`? One constraint family per fixed FDC — its users'
// remaining interference budget against the target's placement — plus one
// family for the target itself, whose own gain must beat the interference
// the fixed FDCs already create.
inline FeasibilityCoefficients constraint_coefficients(
    const GainTensor& gains, const FixedAllocations& fixed, int target_fdc,
    double sinr_target, const SystemConfig& cfg) {
  detail::check_subproblem_args(gains, fixed, target_fdc);
  const int k_users = gains.users_per_fdc();
  const int families = static_cast<int>(fixed.size()) + 1;
  const double noise = cfg.noise_over_power();

  FeasibilityCoefficients fc;
  fc.resize(families, k_users);

  for (int f = 0; f < families - 1; ++f) {
    const FixedAllocation& fa = fixed[f];
    for (int l = 0; l < k_users; ++l) {
      const int user = fa.frb_user[l];
      double peer_interference = 0.0;
      for (const FixedAllocation& other : fixed) {
        if (other.fdc == fa.fdc) continue;
        peer_interference +=
            gains.interference(fa.fdc, user, other.fdc, other.frb_user[l], l);
      }
      fc.rhs_at(f, l) = gains.transmission(fa.fdc, user, l) -
                        sinr_target * (peer_interference + noise);
      for (int k = 0; k < k_users; ++k)
        fc.lhs_at(f, k, l) =
            sinr_target * gains.interference(fa.fdc, user, target_fdc, k, l);
    }
  }

  const int target_family = families - 1;
  for (int l = 0; l < k_users; ++l) {
    fc.rhs_at(target_family, l) = -sinr_target * noise;
    for (int k = 0; k < k_users; ++k) {
      double fixed_interference = 0.0;
      for (const FixedAllocation& fa : fixed)
        fixed_interference +=
            gains.interference(target_fdc, k, fa.fdc, fa.frb_user[l], l);
      fc.lhs_at(target_family, k, l) =
          sinr_target * fixed_interference -
          gains.transmission(target_fdc, k, l);
    }
  }

  fc.shift = choose_shift(fc.min_coefficient());
  return fc;
}

struct SinrBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Initial bisection bracket: best and worst SINR any subsystem user could
// see under the least and most favorable co-FRB interferer choices.
inline SinrBracket bisection_bounds(const GainTensor& gains,
                                    const FixedAllocations& fixed,
                                    int target_fdc, const SystemConfig& cfg) {
  detail::check_subproblem_args(gains, fixed, target_fdc);
  const int k_users = gains.users_per_fdc();
  const double noise = cfg.noise_over_power();

  std::vector<int> members;
  members.reserve(fixed.size() + 1);
  for (const FixedAllocation& fa : fixed) members.push_back(fa.fdc);
  members.push_back(target_fdc);

  SinrBracket bracket{std::numeric_limits<double>::infinity(), 0.0};
  for (int n : members) {
    for (int k = 0; k < k_users; ++k) {
      for (int l = 0; l < k_users; ++l) {
        double strongest = 0.0;
        double weakest = 0.0;
        for (int m : members) {
          if (m == n) continue;
          double hi = -std::numeric_limits<double>::infinity();
          double lo = std::numeric_limits<double>::infinity();
          for (int i = 0; i < k_users; ++i) {
            const double g = gains.interference(n, k, m, i, l);
            hi = std::max(hi, g);
            lo = std::min(lo, g);
          }
          strongest += hi;
          weakest += lo;
        }
        const double tx = gains.transmission(n, k, l);
        bracket.lower = std::min(bracket.lower, tx / (strongest + noise));
        bracket.upper = std::max(bracket.upper, tx / (weakest + noise));
      }
    }
  }
  return bracket;
}

// Min-SINR of the subsystem when the target FDC uses `target_assignment` and
// the fixed FDCs keep theirs. Used for fallbacks and accept tests; for a
// full-system subsystem it coincides with min_sinr(sinr_table(...)).
inline double subsystem_min_sinr(const GainTensor& gains,
                                 const FixedAllocations& fixed, int target_fdc,
                                 const std::vector<int>& target_assignment,
                                 const SystemConfig& cfg) {
  const int k_users = gains.users_per_fdc();
  const double noise = cfg.noise_over_power();

  auto assignment_of = [&](int fdc) -> const std::vector<int>& {
    if (fdc == target_fdc) return target_assignment;
    for (const FixedAllocation& fa : fixed)
      if (fa.fdc == fdc) return fa.frb_user;
    throw std::logic_error("subsystem_min_sinr: FDC not in subsystem");
  };

  std::vector<int> members;
  for (const FixedAllocation& fa : fixed) members.push_back(fa.fdc);
  members.push_back(target_fdc);

  double worst = std::numeric_limits<double>::infinity();
  for (int n : members) {
    const std::vector<int>& own = assignment_of(n);
    for (int l = 0; l < k_users; ++l) {
      double denom = noise;
      for (int m : members) {
        if (m == n) continue;
        denom += gains.interference(n, own[l], m, assignment_of(m)[l], l);
      }
      worst = std::min(worst, gains.transmission(n, own[l], l) / denom);
    }
  }
  return worst;
}

// Outcome of one max-min subproblem solve.
struct BisectionOutcome {
  std::vector<int> frb_user;  // assignment chosen for the target FDC
  double sinr_floor = 0.0;    // largest target proven feasible
  double lower = 0.0;         // final bracket
  double upper = 0.0;
  int iterations = 0;
  bool fallback = false;  // no feasible midpoint; see header notes
};

// Maximizes the subsystem min-SINR over the target FDC's assignments by
// bisecting the SINR target and testing feasibility through the bottleneck
// reduction. Stops when the bracket is narrower than the configured relative
// tolerance; returns the assignment of the last feasible test.
inline BisectionOutcome solve_subproblem(const GainTensor& gains,
                                         const FixedAllocations& fixed,
                                         int target_fdc,
                                         const SystemConfig& cfg) {
  const SinrBracket bounds = bisection_bounds(gains, fixed, target_fdc, cfg);

  BisectionOutcome outcome;
  outcome.lower = bounds.lower;
  outcome.upper = bounds.upper;

  auto bracket_tight = [&](double lo, double up) {
    if (lo < kTinySinr) return (up - lo) < kTinySinr * bounds.upper;
    return (up - lo) / lo < cfg.bisection_tol;
  };

  std::optional<std::vector<int>> witness;
  constexpr int kMaxIterations = 200;
  while (!bracket_tight(outcome.lower, outcome.upper) &&
         outcome.iterations < kMaxIterations) {
    const double mid = 0.5 * (outcome.lower + outcome.upper);
    const FeasibilityVerdict verdict = check_feasibility(
        constraint_coefficients(gains, fixed, target_fdc, mid, cfg));
    ++outcome.iterations;
    if (verdict.feasible) {
      outcome.lower = mid;
      outcome.sinr_floor = mid;
      witness = *verdict.witness;
    } else {
      outcome.upper = mid;
    }
  }

  if (!witness) {
    // Either the initial bracket was already tight (e.g. a single user per
    // FDC) or no midpoint was feasible. The lower bound itself is feasible
    // in exact arithmetic; test it directly before conceding.
    const FeasibilityVerdict verdict = check_feasibility(
        constraint_coefficients(gains, fixed, target_fdc, bounds.lower, cfg));
    if (verdict.feasible) {
      witness = *verdict.witness;
      outcome.sinr_floor = bounds.lower;
    } else {
      outcome.fallback = true;
      const int k_users = gains.users_per_fdc();
      if (k_users <= 6) {
        std::vector<int> perm(k_users);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best = perm;
        double best_min = -std::numeric_limits<double>::infinity();
        do {
          const double v =
              subsystem_min_sinr(gains, fixed, target_fdc, perm, cfg);
          if (v > best_min) {
            best_min = v;
            best = perm;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        witness = best;
        outcome.sinr_floor = best_min;
      } else {
        AssignmentResult best = solve_lbap(build_feasibility_lbap(
            constraint_coefficients(gains, fixed, target_fdc, bounds.lower,
                                    cfg)));
        outcome.sinr_floor = subsystem_min_sinr(gains, fixed, target_fdc,
                                                best.row_of_col, cfg);
        witness = std::move(best.row_of_col);
      }
    }
  }

  outcome.frb_user = std::move(*witness);
  return outcome;
}

// Visit order used by the greedy coordinator. The default sorts FDCs by the
// interference power they receive, strongest first, with index order
// breaking ties; identity and seeded-shuffle orders exist for ablations.
inline std::vector<int> order_fdcs(const GainTensor& gains,
                                   const SystemConfig& cfg) {
  const int n_fdcs = gains.num_fdcs();
  std::vector<int> order(n_fdcs);
  std::iota(order.begin(), order.end(), 0);
  switch (cfg.fdc_ordering) {
    case FdcOrdering::kIdentity:
      break;
    case FdcOrdering::kRandomShuffle: {
      RandomStream rng(derive_seed(cfg.rng_seed, 0x6f72646572ULL));
      for (int i = n_fdcs - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform01() * (i + 1));
        std::swap(order[i], order[std::min(j, i)]);
      }
      break;
    }
    case FdcOrdering::kInterferenceDescending: {
      const std::vector<double> poi = fdc_interference_power(gains, cfg);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (poi[a] != poi[b]) return poi[a] > poi[b];
        return a < b;
      });
      break;
    }
  }
  return order;
}

// Full transcript of one greedy coordination solve.
struct SolveReport {
  Allocation allocation;
  std::vector<double> min_sinr_trace;  // entry r = system min-SINR after
                                       // round r (entry 0: after build-up)
  int outer_iterations = 0;
  bool converged = false;
  bool fallback_used = false;
  std::vector<int> fdc_order;
  std::vector<int> buildup_bisection_iterations;  // one per build-up solve
  std::vector<int> sweep_bisection_iterations;    // one per refinement solve
  double wall_ms = 0.0;
};

// Greedy coordination: order FDCs by received interference, grow the
// coordinated subsystem one FDC at a time (each addition solved as a max-min
// subproblem against the FDCs already placed), then sweep full-system
// refinement rounds until the min-SINR trace stops improving. A refinement
// candidate replaces the incumbent assignment only when the evaluated
// system min-SINR strictly improves, which makes the trace exactly
// nondecreasing despite the tolerance-limited subproblem solves.
inline SolveReport solve_greedy(const GainTensor& gains,
                                const SystemConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const int n_fdcs = gains.num_fdcs();
  const int k_users = gains.users_per_fdc();

  SolveReport report;
  report.fdc_order = order_fdcs(gains, cfg);
  report.allocation.frb_user.assign(n_fdcs, {});

  // Build-up: the first FDC keeps the identity assignment (alone in the
  // subsystem, any permutation is equivalent); each later FDC is optimized
  // against the ones already placed.
  std::vector<int> identity(k_users);
  std::iota(identity.begin(), identity.end(), 0);
  report.allocation.frb_user[report.fdc_order[0]] = identity;

  FixedAllocations placed;
  placed.push_back({report.fdc_order[0], identity});
  for (int s = 1; s < n_fdcs; ++s) {
    const int target = report.fdc_order[s];
    BisectionOutcome outcome = solve_subproblem(gains, placed, target, cfg);
    report.buildup_bisection_iterations.push_back(outcome.iterations);
    report.fallback_used |= outcome.fallback;
    report.allocation.frb_user[target] = outcome.frb_user;
    placed.push_back({target, std::move(outcome.frb_user)});
  }

  report.min_sinr_trace.push_back(
      min_sinr(sinr_table(gains, report.allocation, cfg)));

  // Refinement: re-solve each FDC against all others until a full round
  // leaves the min-SINR within tolerance.
  constexpr int kMaxRounds = 100;
  for (int round = 1; round <= kMaxRounds; ++round) {
    for (int s = 0; s < n_fdcs; ++s) {
      const int target = report.fdc_order[s];
      FixedAllocations others;
      others.reserve(n_fdcs - 1);
      for (int m = 0; m < n_fdcs; ++m)
        if (m != target) others.push_back({m, report.allocation.frb_user[m]});

      BisectionOutcome outcome = solve_subproblem(gains, others, target, cfg);
      report.sweep_bisection_iterations.push_back(outcome.iterations);
      report.fallback_used |= outcome.fallback;

      const double candidate =
          subsystem_min_sinr(gains, others, target, outcome.frb_user, cfg);
      const double incumbent = subsystem_min_sinr(
          gains, others, target, report.allocation.frb_user[target], cfg);
      if (candidate > incumbent)
        report.allocation.frb_user[target] = std::move(outcome.frb_user);
    }

    const double current =
        min_sinr(sinr_table(gains, report.allocation, cfg));
    const double previous = report.min_sinr_trace.back();
    report.min_sinr_trace.push_back(current);
    report.outer_iterations = round;

    const double change = std::abs(current - previous);
    const bool settled = previous < kTinySinr
                             ? change < kTinySinr
                             : change / previous < cfg.greedy_tol;
    if (settled) {
      report.converged = true;
      break;
    }
  }

  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace mmcoord

#endif  // MMCOORD_COORDINATOR_HPP_
