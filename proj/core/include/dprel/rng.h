// Copyright 2026 The dprel Authors
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

#ifndef DPREL_RNG_H_
#define DPREL_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace dprel {

// The engine used by every randomized routine in the library.
using Rng = std::mt19937_64;

// A single seed forked into independent, named streams. Two streams with
// different names (or indices) never share state, so adding draws to one
// stream cannot perturb another. Forking is a pure function of
// (seed, name, index), which makes runs reproducible bit-for-bit.
class RngStreams {
 public:
  explicit RngStreams(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  Rng Fork(std::string_view name, uint64_t index = 0) const {
    return Rng(DeriveSeed(name, index));
  }

  uint64_t DeriveSeed(std::string_view name, uint64_t index) const {
    // FNV-1a over the name, then SplitMix64 finalization of the mix.
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return SplitMix64(SplitMix64(seed_ ^ h) + index);
  }

  static uint64_t SplitMix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  uint64_t seed_;
};

// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dprel

#endif  // DPREL_RNG_H_
