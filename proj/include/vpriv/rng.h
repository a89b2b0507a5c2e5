// Copyright (c) 2026 vpriv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VPRIV_RNG_H_
#define VPRIV_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace vpriv {

// SplitMix64 finalizer. A bijection on 64-bit words.
std::uint64_t Mix64(std::uint64_t x);

// 64-bit FNV-1a over the raw bytes of s (offset basis 0xcbf29ce484222325,
// prime 0x100000001b3).
std::uint64_t Fnv1a64(std::string_view s);

// Seeded generator with platform-independent output.
//
// std::mt19937_64 is fully specified by the standard, but the standard
// distributions are not, so the transforms to uniform/normal/index draws
// are written out here to keep cohorts and samples identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();

  // Standard normal via Box-Muller. Both outputs of each pair are used.
  double Normal();

  // Uniform on [0, n), unbiased (rejection sampling). n must be > 0.
  std::uint64_t Index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vpriv

#endif  // VPRIV_RNG_H_
