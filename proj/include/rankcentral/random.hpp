// Copyright 2026 The rankcentral Authors
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

#ifndef RANKCENTRAL_RANDOM_HPP_
#define RANKCENTRAL_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace rankcentral {

using Seed = std::uint64_t;
using Engine = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent sub-seeds from a parent
// seed and a stream identifier.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr Seed DeriveSeed(Seed parent, std::uint64_t stream) {
  return Mix64(Mix64(parent) ^ Mix64(stream + 0x632be59bd9b4e019ULL));
}

template <typename... Rest>
constexpr Seed DeriveSeed(Seed parent, std::uint64_t stream, Rest... rest) {
  return DeriveSeed(DeriveSeed(parent, stream), static_cast<std::uint64_t>(rest)...);
}

// FNV-1a; stable across platforms so that string identities (method names)
// can take part in seed derivation.
constexpr std::uint64_t StableHash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Small-state generator for per-item streams where seeding a Mersenne
// Twister would dominate the cost (one stream per comparison edge).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline Engine MakeEngine(Seed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

}  // namespace rankcentral

#endif  // RANKCENTRAL_RANDOM_HPP_
