// Copyright 2026 The gamelab Authors.
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

#ifndef GAMELAB_RNG_H_
#define GAMELAB_RNG_H_

#include <array>
#include <cstdint>
#include <vector>

namespace gamelab {

// Counter-based generator: Philox4x32-10 (Salmon, Moraes, Dror & Shaw, 2011).
// Streams depend only on (seed, draw index), so runs replay bit-identically
// on any platform and ports in other languages can reproduce them exactly.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint32_t NextUint32();
  uint64_t NextUint64();

  // Uniform on [0, 1), 53-bit resolution.
  double Uniform();
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi);
  // Integer in {0, ..., n-1}, n >= 1.
  int UniformInt(int n);
  // Standard normal via Box-Muller (second value cached).
  double Gaussian();
  // Index sampled from a probability vector by inverse-CDF scan.
  int Categorical(const std::vector<double>& probs);

 private:
  void Refill();

  std::array<uint32_t, 4> counter_;
  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 4> block_;
  int block_pos_;
  bool has_cached_gaussian_;
  double cached_gaussian_;
};

}  // namespace gamelab

#endif  // GAMELAB_RNG_H_
