// Copyright 2026 The qadapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QADAPT_RNG_HPP
#define QADAPT_RNG_HPP

#include <cstdint>
#include <random>

namespace qadapt {

/// Seeded 64-bit generator with a platform-independent mapping to doubles.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distribution objects from <random> are implementation-defined,
/// so conversions to floating point are done here by hand.
///
/// Within one protocol iteration numbers are consumed in a fixed order:
/// action draws (xi_alpha, xi_beta), the register measurement draw, then the
/// estimator shot draws. Noise draws are interleaved at the gate they follow
/// and are skipped entirely when the corresponding probability is zero.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent generator for stream `stream` of `seed` (SplitMix64 mix).
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1/2, 1/2).
  double uniform_half() { return uniform01() - 0.5; }

  /// Uniform integer in [0, n) for small n.
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(uniform01() * n); }

  bool bernoulli(double p) { return uniform01() < p; }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qadapt

#endif  // QADAPT_RNG_HPP
