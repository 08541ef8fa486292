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

#ifndef MMCOORD_RNG_HPP_
#define MMCOORD_RNG_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace mmcoord {

// splitmix64 finalizer; good avalanche for seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent child seed from a base seed and a stream id. Experiments use
// the chain root -> drop -> realization, so any single cell can be
// regenerated without replaying the cells before it.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_id) {
  return mix64(mix64(base) ^ mix64(stream_id ^ 0x517cc1b727220a95ULL));
}

// Deterministic random stream. The uniform and normal conversions are coded
// by hand because std:: distributions are implementation-defined and would
// break cross-toolchain reproducibility of seeded runs.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; the second variate is cached, so draw counts stay stable.
  double normal(double mean = 0.0, double stddev = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + stddev * spare_;
    }
    const double u = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mean + stddev * r * std::cos(theta);
  }

  // Circularly-symmetric complex normal with unit total variance.
  std::complex<double> complex_normal() {
    const double component_std = 1.0 / std::numbers::sqrt2;
    const double re = normal(0.0, component_std);
    const double im = normal(0.0, component_std);
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mmcoord

#endif  // MMCOORD_RNG_HPP_
