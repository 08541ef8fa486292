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

#ifndef MMCOORD_CONFIG_HPP_
#define MMCOORD_CONFIG_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mmcoord {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) {
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Slope-intercept path loss model, in dB:
//   loss_db = intercept_db + 10 * exponent * log10(d_meters) + shadowing_db
struct PathLossParams {
  double intercept_db = 0.0;
  double exponent = 2.0;
  double shadow_std_db = 0.0;  // standard deviation of the shadowing term
};

// How line-of-sight is decided per link.
enum class LosMode {
  kDistanceProbability,  // p_los(d) = exp(-d / los_decay_distance)
  kAllLos,
  kAllNlos,
};

// Order in which the greedy coordinator visits FDCs.
enum class FdcOrdering {
  kInterferenceDescending,  // strongest aggregate interferer first
  kIdentity,
  kRandomShuffle,
};

// How statistical interference gains enter the gain tensor.
enum class InterferenceMode {
  kPerRealization,  // closed form, conditioned on the serving-beam draw
  kAveraged,        // Monte Carlo average over serving-beam fading
};

// Full description of one network instance plus solver tolerances.
// `users_per_fdc` doubles as the number of FRBs: every FDC schedules each of
// its users on exactly one FRB.
struct SystemConfig {
  int num_fdcs = 10;      // clusters sharing the FRB pool (N)
  int users_per_fdc = 3;  // BS/user pairs per cluster == FRB count (K)
  int num_antennas = 16;  // ULA elements per BS

  double carrier_wavelength = kSpeedOfLight / 28.0e9;  // meters
  double element_spacing = carrier_wavelength / 2.0;   // meters

  double tx_power = 1.0;                       // watts per BS (30 dBm)
  double noise_power = 3.981071705534969e-13;  // watts per FRB (-94 dBm)

  double area_radius = 500.0;    // deployment disc radius, meters
  double serving_radius = 50.0;  // max BS-to-own-user distance, meters
  int num_paths = 3;             // scatterers per link

  double bisection_tol = 1e-3;  // relative bracket width stop
  double greedy_tol = 1e-3;     // relative trace improvement stop

  LosMode los_mode = LosMode::kDistanceProbability;
  double los_decay_distance = 67.1;  // meters
  PathLossParams pathloss_los{61.4, 2.0, 5.8};
  PathLossParams pathloss_nlos{72.0, 2.92, 8.7};
  double min_link_distance = 1.0;  // meters, floor applied before path loss

  FdcOrdering fdc_ordering = FdcOrdering::kInterferenceDescending;
  InterferenceMode interference_mode = InterferenceMode::kPerRealization;
  int averaging_draws = 1000;  // Monte Carlo draws in averaged mode

  // Reserved: hook for re-running coordination when measured interference
  // drifts. No solver consumes it; periodic re-coordination is assumed.
  bool event_triggered_recoordination = false;

  std::uint64_t rng_seed = 1;

  int pairs() const { return num_fdcs * users_per_fdc; }

  // Noise term of the SINR denominator in gain units: Na * sigma^2 / P.
  double noise_over_power() const {
    return num_antennas * noise_power / tx_power;
  }

  void validate() const {
    auto require = [](bool ok, const char* what) {
      if (!ok) throw std::invalid_argument(std::string("SystemConfig: ") + what);
    };
    require(num_fdcs >= 1, "num_fdcs must be >= 1");
    require(users_per_fdc >= 1, "users_per_fdc must be >= 1");
    require(num_antennas >= 1, "num_antennas must be >= 1");
    require(carrier_wavelength > 0.0, "carrier_wavelength must be positive");
    require(element_spacing > 0.0, "element_spacing must be positive");
    require(tx_power > 0.0, "tx_power must be positive");
    require(noise_power > 0.0, "noise_power must be positive");
    require(area_radius >= 0.0, "area_radius must be nonnegative");
    require(serving_radius >= 0.0, "serving_radius must be nonnegative");
    require(num_paths >= 1, "num_paths must be >= 1");
    require(bisection_tol > 0.0 && bisection_tol < 1.0,
            "bisection_tol must lie in (0, 1)");
    require(greedy_tol > 0.0 && greedy_tol < 1.0,
            "greedy_tol must lie in (0, 1)");
    require(los_decay_distance > 0.0, "los_decay_distance must be positive");
    require(pathloss_los.shadow_std_db >= 0.0,
            "LOS shadow_std_db must be nonnegative");
    require(pathloss_nlos.shadow_std_db >= 0.0,
            "NLOS shadow_std_db must be nonnegative");
    require(min_link_distance > 0.0, "min_link_distance must be positive");
    require(averaging_draws >= 1, "averaging_draws must be >= 1");
  }
};

}  // namespace mmcoord

#endif  // MMCOORD_CONFIG_HPP_
