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

#include "floatbody/rng.h"

#include <cmath>

namespace floatbody {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, uint64_t index) {
  return SplitMix64(SplitMix64(master) ^ SplitMix64(index + 0x51ed270b7ULL));
}

Point Rng::Gaussian(int d) {
  Point g(d);
  for (double& v : g) v = Normal();
  return g;
}

Point Rng::UnitSphere(int d) {
  while (true) {
    Point g = Gaussian(d);
    double norm = Norm2(g);
    if (norm < 1e-12) continue;
    for (double& v : g) v /= norm;
    return g;
  }
}

Point Rng::UniformBall(int d, double r) {
  Point u = UnitSphere(d);
  double s = r * std::pow(Uniform(), 1.0 / d);
  for (double& v : u) v *= s;
  return u;
}

}  // namespace floatbody
