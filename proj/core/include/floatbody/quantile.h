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

#ifndef FLOATBODY_QUANTILE_H_
#define FLOATBODY_QUANTILE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/geometry.h"
#include "floatbody/rng.h"
#include "floatbody/types.h"

namespace floatbody {

// 1-based rank of the q-quantile among n values: the least k with k/n >= q.
int64_t QuantileRank(double q, int64_t n);

// The QuantileRank-th order statistic (left-continuous, no interpolation).
// Reorders `values`. Errors: InvalidQuantile for q outside (0, 1) or n = 0.
absl::StatusOr<double> EmpiricalQuantile(std::vector<double>& values,
                                         double q);

// Q_q(<X, theta>). Errors: InvalidQuantile, DimensionMismatch.
absl::StatusOr<double> QuantileAlong(const Sample& x, const Point& theta,
                                     double q);

// (Q_q(<X, theta>))_{theta in A}.
absl::StatusOr<std::vector<double>> QueryQuantiles(const Sample& x, double q,
                                                   const DirectionNet& net);

// max_{theta in A} |Q_q(<X,theta>) - Q_q(<Y,theta>)|; X and Y may differ in
// size.
absl::StatusOr<double> DeltaQ(const Sample& x, const Sample& y, double q,
                              const DirectionNet& net);

// Same distance against reference quantiles (one per net direction).
absl::StatusOr<double> DeltaQToReference(const Sample& x, double q,
                                         const DirectionNet& net,
                                         const std::vector<double>& reference);

struct FloatingBodyApprox {
  Polytope body;
  double q = 0.0;
  uint64_t source_hash = 0;
  InscribedBall ball;
  // No interior point (the Chebyshev radius is not positive).
  bool empty = false;
};

// {x : <x, theta> <= Q_q(<X, theta>) for all theta in A}. An empty body is a
// legal outcome reported through the `empty` flag. Errors: InvalidQuantile,
// DimensionMismatch, Unbounded (net does not surround the origin).
absl::StatusOr<FloatingBodyApprox> FloatingBody(const Sample& x, double q,
                                                const DirectionNet& net);

// The polytope with the given support values along the net.
absl::StatusOr<Polytope> PolytopeFromSupport(const DirectionNet& net,
                                             const std::vector<double>& h);

// M iid uniform directions. d = 1 always yields {+1, -1}.
absl::StatusOr<DirectionNet> RandomSphereNet(int d, int m, Rng& rng);

// Greedy farthest-point gamma-net for d <= 3: pairwise gaps >= gamma and every
// direction within gamma of the net. d = 1 yields {+1, -1}.
absl::StatusOr<DirectionNet> DeterministicSphereNet(int d, double gamma);

// {+e_i, -e_i}.
absl::StatusOr<DirectionNet> AxisNet(int d);

// m equally spaced directions on the circle, starting at angle `phase`.
absl::StatusOr<DirectionNet> CircleNet(int m, double phase = 0.0);

}  // namespace floatbody

#endif  // FLOATBODY_QUANTILE_H_
