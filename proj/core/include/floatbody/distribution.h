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

#ifndef FLOATBODY_DISTRIBUTION_H_
#define FLOATBODY_DISTRIBUTION_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/rng.h"
#include "floatbody/types.h"

namespace floatbody {

// All laws are scaled to identity covariance.
enum class DistributionKind {
  kIsotropicGaussian,
  // Uniform on the ball of radius sqrt(d + 2).
  kUniformBall,
  // Uniform on [-sqrt(3), sqrt(3)]^d.
  kUniformCube,
  // Independent Laplace coordinates with scale 1/sqrt(2).
  kProductLaplace,
};

std::string_view DistributionKindName(DistributionKind kind);
absl::StatusOr<DistributionKind> ParseDistributionKind(std::string_view name);

struct DistributionSpec {
  DistributionKind kind = DistributionKind::kIsotropicGaussian;
  int d = 2;
  uint64_t seed = 0;
};

// Radius, half-width or Laplace scale that makes the law isotropic.
double IsotropicScale(DistributionKind kind, int d);

// n iid draws using the spec's seed.
absl::StatusOr<Sample> SampleDistribution(const DistributionSpec& spec,
                                          int64_t n);
absl::StatusOr<Sample> SampleDistribution(const DistributionSpec& spec,
                                          int64_t n, Rng& rng);
Point DrawPoint(const DistributionSpec& spec, Rng& rng);

// Law of <X, theta> for unit theta.
class Marginal {
 public:
  virtual ~Marginal() = default;
  virtual double Density(double t) const = 0;
  virtual double Cdf(double t) const = 0;
  virtual double Quantile(double q) const = 0;
};

absl::StatusOr<std::unique_ptr<Marginal>> MakeMarginal(
    const DistributionSpec& spec, const Point& theta);

}  // namespace floatbody

#endif  // FLOATBODY_DISTRIBUTION_H_
