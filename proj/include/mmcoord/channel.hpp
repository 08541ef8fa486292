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

#ifndef MMCOORD_CHANNEL_HPP_
#define MMCOORD_CHANNEL_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "mmcoord/config.hpp"
#include "mmcoord/rng.hpp"
#include "mmcoord/topology.hpp"

namespace mmcoord {

using Complex = std::complex<double>;

// Small-scale fading for every serving link: complex path coefficients per
// (pair, FRB, path), i.i.d. CN(0, 1). Only serving links carry explicit
// fading; interference gains average the victim-side fading out in closed
// form, so cross-link draws would never be consumed.
struct SmallScaleRealization {
  int num_fdcs = 0;
  int users_per_fdc = 0;
  int num_paths = 0;
  std::vector<Complex> coeffs;  // [pair][frb][path]

  std::span<const Complex> serving(int fdc, int k, int frb) const {
    const int pair = fdc * users_per_fdc + k;
    const std::size_t offset =
        (static_cast<std::size_t>(pair) * users_per_fdc + frb) * num_paths;
    return {coeffs.data() + offset, static_cast<std::size_t>(num_paths)};
  }
};

inline SmallScaleRealization draw_small_scale(const SystemConfig& cfg,
                                              RandomStream& rng) {
  cfg.validate();
  SmallScaleRealization ss;
  ss.num_fdcs = cfg.num_fdcs;
  ss.users_per_fdc = cfg.users_per_fdc;
  ss.num_paths = cfg.num_paths;
  ss.coeffs.resize(static_cast<std::size_t>(cfg.pairs()) * cfg.users_per_fdc *
                   cfg.num_paths);
  for (Complex& c : ss.coeffs) c = rng.complex_normal();
  return ss;
}

// Phase advance between adjacent array elements for one departure angle.
inline double element_phase(double aod, const SystemConfig& cfg) {
  return 2.0 * std::numbers::pi / cfg.carrier_wavelength *
         cfg.element_spacing * std::sin(aod);
}

// Per-antenna sums of path coefficients under the array phase progression:
// entry a equals sum_i fading[i] * exp(j * a * phase_i). This is the channel
// vector before path-loss scaling, and the quantity the analog beamformer
// phase-aligns against.
inline std::vector<Complex> antenna_path_sums(std::span<const double> aods,
                                              std::span<const Complex> fading,
                                              const SystemConfig& cfg) {
  if (aods.size() != fading.size())
    throw std::invalid_argument(
        "antenna_path_sums: path coefficient count does not match AoD count");
  std::vector<Complex> sums(cfg.num_antennas, Complex{0.0, 0.0});
  for (std::size_t path = 0; path < aods.size(); ++path) {
    const double phase = element_phase(aods[path], cfg);
    for (int a = 0; a < cfg.num_antennas; ++a)
      sums[a] += fading[path] * std::polar(1.0, a * phase);
  }
  return sums;
}

// Downlink channel vector of one link on one FRB: the per-antenna path sums
// scaled by the inverse square root of the link path loss.
inline std::vector<Complex> channel_vector(const LinkLargeScale& link,
                                           std::span<const Complex> fading,
                                           const SystemConfig& cfg) {
  std::vector<Complex> h = antenna_path_sums(link.aods, fading, cfg);
  const double scale = 1.0 / std::sqrt(link.path_loss);
  for (Complex& v : h) v *= scale;
  return h;
}

// Constant-modulus analog beamformer that phase-conjugates the serving
// channel element by element; this maximizes |h^T w| over unit-modulus
// weights and makes the beamformed serving channel real and nonnegative.
// Elements whose channel entry vanishes get weight 1.
inline std::vector<Complex> beamforming_vector(
    std::span<const Complex> serving_fading, std::span<const double> aods,
    const SystemConfig& cfg) {
  std::vector<Complex> w = antenna_path_sums(aods, serving_fading, cfg);
  for (Complex& v : w) {
    const double mag = std::abs(v);
    v = (mag > 0.0) ? std::conj(v) / mag : Complex{1.0, 0.0};
  }
  return w;
}

// Effective beamformed gain |h^T w|^2 (plain transpose, no conjugation).
inline double transmission_gain(std::span<const Complex> h,
                                std::span<const Complex> w) {
  if (h.size() != w.size())
    throw std::invalid_argument("transmission_gain: dimension mismatch");
  Complex dot{0.0, 0.0};
  for (std::size_t a = 0; a < h.size(); ++a) dot += h[a] * w[a];
  return std::norm(dot);
}

// Expected beamformed gain of an interfering beam at a victim link, with the
// victim's own Rayleigh path fading integrated out: only the victim's
// departure angles and path loss remain.
//   E |h^T w|^2 = (1/eta) * sum_i |sum_a w[a] * exp(j * a * phase_i)|^2
inline double interference_gain(std::span<const Complex> interferer_beam,
                                const LinkLargeScale& victim,
                                const SystemConfig& cfg) {
  if (static_cast<int>(interferer_beam.size()) != cfg.num_antennas)
    throw std::invalid_argument("interference_gain: beam dimension mismatch");
  double total = 0.0;
  for (double aod : victim.aods) {
    const double phase = element_phase(aod, cfg);
    Complex response{0.0, 0.0};
    for (int a = 0; a < cfg.num_antennas; ++a)
      response += interferer_beam[a] * std::polar(1.0, a * phase);
    total += std::norm(response);
  }
  return total / victim.path_loss;
}

// Large-scale gain tensor consumed by every solver: transmission gains for
// each (FDC, user, FRB) and statistical interference gains for each
// (victim FDC, victim user, source FDC, source BS, FRB). The in-FDC band of
// the interference table is undefined and guarded, since FRBs are orthogonal
// inside an FDC.
class GainTensor {
 public:
  GainTensor() = default;
  GainTensor(int num_fdcs, int users_per_fdc)
      : num_fdcs_(num_fdcs),
        users_per_fdc_(users_per_fdc),
        tx_(static_cast<std::size_t>(num_fdcs) * users_per_fdc * users_per_fdc,
            0.0),
        inter_(static_cast<std::size_t>(num_fdcs) * users_per_fdc * num_fdcs *
                   users_per_fdc * users_per_fdc,
               0.0) {}

  int num_fdcs() const { return num_fdcs_; }
  int users_per_fdc() const { return users_per_fdc_; }
  int num_frbs() const { return users_per_fdc_; }

  double transmission(int fdc, int user, int frb) const {
    return tx_[tx_index(fdc, user, frb)];
  }
  double& transmission(int fdc, int user, int frb) {
    return tx_[tx_index(fdc, user, frb)];
  }

  double interference(int victim_fdc, int victim_user, int src_fdc, int src_bs,
                      int frb) const {
    return inter_[inter_index(victim_fdc, victim_user, src_fdc, src_bs, frb)];
  }
  double& interference(int victim_fdc, int victim_user, int src_fdc,
                       int src_bs, int frb) {
    return inter_[inter_index(victim_fdc, victim_user, src_fdc, src_bs, frb)];
  }

 private:
  std::size_t tx_index(int fdc, int user, int frb) const {
    check_range(fdc, user, frb);
    return (static_cast<std::size_t>(fdc) * users_per_fdc_ + user) *
               users_per_fdc_ +
           frb;
  }

  std::size_t inter_index(int victim_fdc, int victim_user, int src_fdc,
                          int src_bs, int frb) const {
    check_range(victim_fdc, victim_user, frb);
    check_range(src_fdc, src_bs, frb);
    if (victim_fdc == src_fdc)
      throw std::invalid_argument(
          "GainTensor: in-FDC interference is undefined (orthogonal FRBs)");
    return (((static_cast<std::size_t>(victim_fdc) * users_per_fdc_ +
              victim_user) *
                 num_fdcs_ +
             src_fdc) *
                users_per_fdc_ +
            src_bs) *
               users_per_fdc_ +
           frb;
  }

  void check_range(int fdc, int user, int frb) const {
    if (fdc < 0 || fdc >= num_fdcs_ || user < 0 || user >= users_per_fdc_ ||
        frb < 0 || frb >= users_per_fdc_)
      throw std::out_of_range("GainTensor: index out of range");
  }

  int num_fdcs_ = 0;
  int users_per_fdc_ = 0;
  std::vector<double> tx_;
  std::vector<double> inter_;
};

// Assembles the gain tensor for one small-scale realization. Serving beams
// are derived from the realization; interference entries are either the
// closed-form expectation conditioned on those beams (per-realization mode)
// or an additional Monte Carlo average over serving-beam fading (averaged
// mode, seeded from cfg.rng_seed so the result is deterministic).
inline GainTensor build_gain_tensor(const LargeScaleCsi& csi,
                                    const SmallScaleRealization& ss,
                                    const SystemConfig& cfg) {
  cfg.validate();
  if (csi.num_fdcs() != cfg.num_fdcs ||
      csi.users_per_fdc() != cfg.users_per_fdc)
    throw std::invalid_argument("build_gain_tensor: CSI/config mismatch");
  if (ss.num_fdcs != cfg.num_fdcs || ss.users_per_fdc != cfg.users_per_fdc ||
      ss.num_paths != cfg.num_paths)
    throw std::invalid_argument(
        "build_gain_tensor: small-scale realization/config mismatch");

  const int n_fdcs = cfg.num_fdcs;
  const int k_users = cfg.users_per_fdc;
  GainTensor gains(n_fdcs, k_users);

  // Serving beams per (pair, FRB), reused for every victim.
  std::vector<std::vector<Complex>> beams(
      static_cast<std::size_t>(cfg.pairs()) * k_users);
  for (int m = 0; m < n_fdcs; ++m) {
    for (int i = 0; i < k_users; ++i) {
      const LinkLargeScale& serving = csi.serving(m, i);
      for (int l = 0; l < k_users; ++l) {
        beams[static_cast<std::size_t>(m * k_users + i) * k_users + l] =
            beamforming_vector(ss.serving(m, i, l), serving.aods, cfg);
      }
    }
  }
  auto beam = [&](int fdc, int bs, int frb) -> const std::vector<Complex>& {
    return beams[static_cast<std::size_t>(fdc * k_users + bs) * k_users + frb];
  };

  for (int n = 0; n < n_fdcs; ++n) {
    for (int k = 0; k < k_users; ++k) {
      const LinkLargeScale& serving = csi.serving(n, k);
      for (int l = 0; l < k_users; ++l) {
        const std::vector<Complex> h =
            channel_vector(serving, ss.serving(n, k, l), cfg);
        gains.transmission(n, k, l) = transmission_gain(h, beam(n, k, l));
      }
    }
  }

  if (cfg.interference_mode == InterferenceMode::kPerRealization) {
    for (int n = 0; n < n_fdcs; ++n)
      for (int k = 0; k < k_users; ++k)
        for (int m = 0; m < n_fdcs; ++m) {
          if (m == n) continue;
          for (int i = 0; i < k_users; ++i) {
            const LinkLargeScale& victim = csi.link(n, k, m, i);
            for (int l = 0; l < k_users; ++l)
              gains.interference(n, k, m, i, l) =
                  interference_gain(beam(m, i, l), victim, cfg);
          }
        }
    return gains;
  }

  // Averaged mode. The expectation over the interferer's serving fading does
  // not depend on the FRB, so one average per (victim, source) pair is
  // replicated across FRBs.
  for (int m = 0; m < n_fdcs; ++m) {
    for (int i = 0; i < k_users; ++i) {
      RandomStream draw_rng(derive_seed(
          cfg.rng_seed, 0x6176670000000000ULL + m * k_users + i));
      const LinkLargeScale& serving = csi.serving(m, i);
      std::vector<double> acc(static_cast<std::size_t>(n_fdcs) * k_users, 0.0);
      std::vector<Complex> fading(cfg.num_paths);
      for (int d = 0; d < cfg.averaging_draws; ++d) {
        for (Complex& f : fading) f = draw_rng.complex_normal();
        const std::vector<Complex> w =
            beamforming_vector(fading, serving.aods, cfg);
        for (int n = 0; n < n_fdcs; ++n) {
          if (n == m) continue;
          for (int k = 0; k < k_users; ++k)
            acc[static_cast<std::size_t>(n) * k_users + k] +=
                interference_gain(w, csi.link(n, k, m, i), cfg);
        }
      }
      for (int n = 0; n < n_fdcs; ++n) {
        if (n == m) continue;
        for (int k = 0; k < k_users; ++k) {
          const double mean = acc[static_cast<std::size_t>(n) * k_users + k] /
                              cfg.averaging_draws;
          for (int l = 0; l < k_users; ++l)
            gains.interference(n, k, m, i, l) = mean;
        }
      }
    }
  }
  return gains;
}

}  // namespace mmcoord

#endif  // MMCOORD_CHANNEL_HPP_
