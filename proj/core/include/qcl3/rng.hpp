/* Copyright 2026 The qcl3 Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef QCL3_RNG_HPP
#define QCL3_RNG_HPP

#include <cstdint>

namespace qcl3 {

// Counter-based generator built on the SplitMix64 finalizer: output j is
// mix(seed + j * gamma). Stateless apart from the counter, so streams are
// reproducible across platforms and languages from (seed, counter) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() { return mix(seed_ + (++counter_) * kGamma); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Sub-seed derivation for run i of a batch: mix(seed ^ (i+1) * weyl).
// Documented so batches can be reproduced by external tools.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t i) {
  return CounterRng::mix(seed ^ ((i + 1) * 0xD1B54A32D192ED03ULL));
}

}  // namespace qcl3

#endif  // QCL3_RNG_HPP
