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

#ifndef MMCOORD_TOPOLOGY_HPP_
#define MMCOORD_TOPOLOGY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mmcoord/config.hpp"
#include "mmcoord/rng.hpp"

namespace mmcoord {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// BS and user drop for one network instance. Storage is pair-major: entry
// `fdc * users_per_fdc + k` is pair k of FDC `fdc`, and user k is always
// served by BS k of the same FDC (the pairing is index-aligned).
struct Topology {
  int num_fdcs = 0;
  int users_per_fdc = 0;
  std::vector<Point2> bs_positions;
  std::vector<Point2> user_positions;

  int pairs() const { return num_fdcs * users_per_fdc; }
  int pair_index(int fdc, int k) const { return fdc * users_per_fdc + k; }
  int fdc_of_pair(int pair) const { return pair / users_per_fdc; }

  const Point2& bs(int fdc, int k) const {
    return bs_positions[pair_index(fdc, k)];
  }
  const Point2& user(int fdc, int k) const {
    return user_positions[pair_index(fdc, k)];
  }
};

// Large-scale state of one directed link (a transmitting BS seen by a
// receiving user): everything that stays fixed while small-scale fading
// changes realization to realization.
struct LinkLargeScale {
  double distance = 0.0;      // meters, already clamped to the config floor
  bool los = false;           // line-of-sight class drawn for this link
  double shadowing_db = 0.0;  // realized shadowing term
  double path_loss = 1.0;     // linear attenuation eta
  std::vector<double> aods;   // departure angles, radians in [0, 2*pi)

  int num_paths() const { return static_cast<int>(aods.size()); }
};

// Large-scale state for every (transmitter BS, receiver user) ordered pair.
class LargeScaleCsi {
 public:
  LargeScaleCsi() = default;
  LargeScaleCsi(int num_fdcs, int users_per_fdc)
      : num_fdcs_(num_fdcs),
        users_per_fdc_(users_per_fdc),
        links_(static_cast<std::size_t>(num_fdcs * users_per_fdc) *
               static_cast<std::size_t>(num_fdcs * users_per_fdc)) {}

  int num_fdcs() const { return num_fdcs_; }
  int users_per_fdc() const { return users_per_fdc_; }

  // Link from BS `tx_bs` of FDC `tx_fdc` to user `rx_user` of FDC `rx_fdc`.
  LinkLargeScale& link(int rx_fdc, int rx_user, int tx_fdc, int tx_bs) {
    return links_[index(rx_fdc, rx_user, tx_fdc, tx_bs)];
  }
  const LinkLargeScale& link(int rx_fdc, int rx_user, int tx_fdc,
                             int tx_bs) const {
    return links_[index(rx_fdc, rx_user, tx_fdc, tx_bs)];
  }

  // The link a pair uses for its own transmission.
  const LinkLargeScale& serving(int fdc, int k) const {
    return link(fdc, k, fdc, k);
  }

 private:
  std::size_t index(int rx_fdc, int rx_user, int tx_fdc, int tx_bs) const {
    const int pairs = num_fdcs_ * users_per_fdc_;
    const int rx = rx_fdc * users_per_fdc_ + rx_user;
    const int tx = tx_fdc * users_per_fdc_ + tx_bs;
    if (rx < 0 || rx >= pairs || tx < 0 || tx >= pairs)
      throw std::out_of_range("LargeScaleCsi: link index out of range");
    return static_cast<std::size_t>(rx) * pairs + tx;
  }

  int num_fdcs_ = 0;
  int users_per_fdc_ = 0;
  std::vector<LinkLargeScale> links_;
};

inline double path_loss_db(const PathLossParams& p, double dist,
                           double shadowing_db) {
  return p.intercept_db + p.exponent * 10.0 * std::log10(dist) + shadowing_db;
}

namespace detail {

inline Point2 uniform_in_disc(const Point2& center, double radius,
                              RandomStream& rng) {
  const double r = radius * std::sqrt(rng.uniform01());
  const double angle = 2.0 * std::numbers::pi * rng.uniform01();
  return {center.x + r * std::cos(angle), center.y + r * std::sin(angle)};
}

// Assigns every point to one of `centroids.size()` clusters of capacity
// `capacity` each, greedily over globally sorted (distance, point, cluster)
// triples. Total capacity equals the point count, so the sweep always
// terminates with everything placed.
inline std::vector<int> balanced_assign(const std::vector<Point2>& points,
                                        const std::vector<Point2>& centroids,
                                        int capacity) {
  const int n_points = static_cast<int>(points.size());
  const int n_clusters = static_cast<int>(centroids.size());
  std::vector<std::tuple<double, int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n_points) * n_clusters);
  for (int p = 0; p < n_points; ++p)
    for (int c = 0; c < n_clusters; ++c)
      edges.emplace_back(distance(points[p], centroids[c]), p, c);
  std::sort(edges.begin(), edges.end());

  std::vector<int> assignment(n_points, -1);
  std::vector<int> load(n_clusters, 0);
  int placed = 0;
  for (const auto& [d, p, c] : edges) {
    if (placed == n_points) break;
    if (assignment[p] >= 0 || load[c] == capacity) continue;
    assignment[p] = c;
    ++load[c];
    ++placed;
  }
  return assignment;
}

// Capacity-constrained k-means: k-means++ style seeding, then alternate
// balanced assignment and centroid updates until the assignment is stable.
inline std::vector<int> balanced_clusters(const std::vector<Point2>& points,
                                          int n_clusters, int capacity,
                                          RandomStream& rng) {
  const int n_points = static_cast<int>(points.size());
  if (n_clusters == 1) return std::vector<int>(n_points, 0);

  std::vector<Point2> centroids;
  centroids.reserve(n_clusters);
  centroids.push_back(
      points[std::min<int>(n_points - 1,
                           static_cast<int>(rng.uniform01() * n_points))]);
  std::vector<double> dist2(n_points);
  while (static_cast<int>(centroids.size()) < n_clusters) {
    double total = 0.0;
    for (int p = 0; p < n_points; ++p) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point2& c : centroids)
        best = std::min(best, distance(points[p], c));
      dist2[p] = best * best;
      total += dist2[p];
    }
    int chosen = 0;
    if (total > 0.0) {
      double ticket = rng.uniform01() * total;
      for (int p = 0; p < n_points; ++p) {
        ticket -= dist2[p];
        if (ticket <= 0.0) {
          chosen = p;
          break;
        }
        chosen = p;  // numeric slack: fall through to the last point
      }
    } else {
      chosen = static_cast<int>(centroids.size()) % n_points;
    }
    centroids.push_back(points[chosen]);
  }

  std::vector<int> assignment = balanced_assign(points, centroids, capacity);
  for (int round = 0; round < 32; ++round) {
    std::vector<Point2> sums(n_clusters, Point2{});
    std::vector<int> counts(n_clusters, 0);
    for (int p = 0; p < n_points; ++p) {
      sums[assignment[p]].x += points[p].x;
      sums[assignment[p]].y += points[p].y;
      ++counts[assignment[p]];
    }
    for (int c = 0; c < n_clusters; ++c) {
      if (counts[c] > 0)
        centroids[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
    }
    std::vector<int> next = balanced_assign(points, centroids, capacity);
    if (next == assignment) break;
    assignment = std::move(next);
  }
  return assignment;
}

}  // namespace detail

// Drops `num_fdcs * users_per_fdc` BSs uniformly on the deployment disc,
// groups them into FDCs of exactly `users_per_fdc` members by geographic
// proximity, and places one user uniformly within the serving radius of each
// BS (kept inside the deployment disc). Fully deterministic for a given
// stream state.
inline Topology generate_topology(const SystemConfig& cfg, RandomStream& rng) {
  cfg.validate();
  const int pairs = cfg.pairs();

  std::vector<Point2> raw_bs(pairs);
  for (Point2& p : raw_bs)
    p = detail::uniform_in_disc(Point2{}, cfg.area_radius, rng);

  const std::vector<int> cluster =
      detail::balanced_clusters(raw_bs, cfg.num_fdcs, cfg.users_per_fdc, rng);

  // Pair index inside an FDC follows the original draw order.
  Topology topo;
  topo.num_fdcs = cfg.num_fdcs;
  topo.users_per_fdc = cfg.users_per_fdc;
  topo.bs_positions.resize(pairs);
  std::vector<int> next_slot(cfg.num_fdcs, 0);
  for (int b = 0; b < pairs; ++b) {
    const int fdc = cluster[b];
    topo.bs_positions[topo.pair_index(fdc, next_slot[fdc]++)] = raw_bs[b];
  }
  for (int fdc = 0; fdc < cfg.num_fdcs; ++fdc) {
    if (next_slot[fdc] != cfg.users_per_fdc)
      throw std::logic_error("generate_topology: unbalanced clustering");
  }

  topo.user_positions.resize(pairs);
  for (int p = 0; p < pairs; ++p) {
    const Point2& bs = topo.bs_positions[p];
    Point2 user{};
    bool inside = false;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      user = detail::uniform_in_disc(bs, cfg.serving_radius, rng);
      if (std::hypot(user.x, user.y) <= cfg.area_radius) {
        inside = true;
        break;
      }
    }
    if (!inside) {
      const double norm = std::hypot(user.x, user.y);
      if (norm > 0.0) {
        user.x *= cfg.area_radius / norm;
        user.y *= cfg.area_radius / norm;
      } else {
        user = Point2{};
      }
    }
    topo.user_positions[p] = user;
  }
  return topo;
}

// Draws the large-scale state of every (tx BS, rx user) ordered pair:
// LOS class, shadowing, resulting linear path loss, and per-path departure
// angles. Links are visited receiver-major so the draw order is part of the
// reproducibility contract.
inline LargeScaleCsi draw_large_scale(const SystemConfig& cfg,
                                      const Topology& topo,
                                      RandomStream& rng) {
  cfg.validate();
  if (topo.num_fdcs != cfg.num_fdcs || topo.users_per_fdc != cfg.users_per_fdc)
    throw std::invalid_argument("draw_large_scale: topology/config mismatch");

  LargeScaleCsi csi(cfg.num_fdcs, cfg.users_per_fdc);
  for (int n = 0; n < cfg.num_fdcs; ++n) {
    for (int k = 0; k < cfg.users_per_fdc; ++k) {
      for (int m = 0; m < cfg.num_fdcs; ++m) {
        for (int i = 0; i < cfg.users_per_fdc; ++i) {
          LinkLargeScale& ls = csi.link(n, k, m, i);
          ls.distance = std::max(distance(topo.bs(m, i), topo.user(n, k)),
                                 cfg.min_link_distance);
          switch (cfg.los_mode) {
            case LosMode::kAllLos:
              ls.los = true;
              break;
            case LosMode::kAllNlos:
              ls.los = false;
              break;
            case LosMode::kDistanceProbability:
              ls.los = rng.uniform01() <
                       std::exp(-ls.distance / cfg.los_decay_distance);
              break;
          }
          const PathLossParams& p =
              ls.los ? cfg.pathloss_los : cfg.pathloss_nlos;
          ls.shadowing_db = rng.normal(0.0, p.shadow_std_db);
          ls.path_loss =
              db_to_linear(path_loss_db(p, ls.distance, ls.shadowing_db));
          ls.aods.resize(cfg.num_paths);
          for (double& aod : ls.aods)
            aod = 2.0 * std::numbers::pi * rng.uniform01();
        }
      }
    }
  }
  return csi;
}

}  // namespace mmcoord

#endif  // MMCOORD_TOPOLOGY_HPP_
