//
// Copyright 2026 The floatbody Authors
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
//

#ifndef FLOATBODY_RNG_H_
#define FLOATBODY_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>

#include "floatbody/types.h"

namespace floatbody {

uint64_t SplitMix64(uint64_t x);

// Seed of the i-th worker stream derived from a master seed. Streams depend
// only on (master, index), never on the thread count.
uint64_t DeriveSeed(uint64_t master, uint64_t index);

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(SplitMix64(seed)) {}

  double Uniform() { return std::uniform_real_distribution<double>()(engine_); }
  // Uniform on (0, 1].
  double UniformPositive() { return 1.0 - Uniform(); }
  double Normal() { return normal_(engine_); }
  double Exponential() { return -std::log(UniformPositive()); }
  int64_t UniformInt(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(engine_);
  }
  uint64_t NextU64() { return engine_(); }

  Point Gaussian(int d);
  // Normalized Gaussian; resampled when the norm falls below 1e-12.
  Point UnitSphere(int d);
  // Uniform in the Euclidean ball of radius r centered at 0.
  Point UniformBall(int d, double r);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace floatbody

#endif  // FLOATBODY_RNG_H_
