// Copyright 2026 The nepec authors
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

#ifndef NEPEC_RNG_HPP
#define NEPEC_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>

namespace nepec {

/// splitmix64 step; used to derive well-separated sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for sub-stream `index` of a base seed. Deterministic, and distinct
/// streams for distinct indices, so samples can be partitioned across
/// workers (or runs) without changing any drawn value.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0xD1342543DE82EF95ULL + 1));
}

/// mt19937_64 wrapper with platform-independent uniform draws.
///
/// std::uniform_*_distribution output is implementation-defined, so this
/// class hand-rolls the two primitives needed here: a 53-bit uniform in
/// [0, 1) and an unbiased bounded integer (rejection sampling).
class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v = eng_();
        while (v >= limit) {
            v = eng_();
        }
        return v % n;
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace nepec

#endif
