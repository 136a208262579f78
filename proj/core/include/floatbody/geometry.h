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

#ifndef FLOATBODY_GEOMETRY_H_
#define FLOATBODY_GEOMETRY_H_

#include "absl/status/statusor.h"
#include "floatbody/rng.h"
#include "floatbody/types.h"

namespace floatbody {

struct SupportResult {
  double value = 0.0;
  Point maximizer;
};

// h_K(theta) = max_{x in K} <x, theta> with a maximizing vertex.
// Errors: Unbounded, Infeasible, DimensionMismatch.
absl::StatusOr<SupportResult> SupportFunction(const Polytope& k,
                                              const Point& theta);

struct InscribedBall {
  Point center;
  // max(lp_radius, 0).
  double radius = 0.0;
  // Optimum of the Chebyshev LP; negative when the polytope is empty.
  double lp_radius = 0.0;
  bool empty = false;
};

// Largest Euclidean ball inside K. An empty K yields radius 0 with
// empty = true. Errors: Unbounded.
absl::StatusOr<InscribedBall> ChebyshevBall(const Polytope& k);

// max over the net of |h_K1 - h_K2|, a lower bound on the Hausdorff distance.
absl::StatusOr<double> HausdorffNet(const Polytope& k1, const Polytope& k2,
                                    const DirectionNet& net);

// max over the net of the norm of the maximizing vertex; approximates the
// radius of the smallest origin-centered ball containing K.
absl::StatusOr<double> CircumradiusNet(const Polytope& k,
                                       const DirectionNet& net);

struct SteinerEstimate {
  Point point;
  // Standard error of the Monte Carlo mean (root of the trace of the
  // covariance of the estimate).
  double std_error = 0.0;
  int directions = 0;
};

// Average of the LP maximizers over m uniform directions. Always inside K.
absl::StatusOr<SteinerEstimate> SteinerPoint(const Polytope& k, int m,
                                             Rng& rng);

// Same estimate over a fixed set of directions (shared between bodies for
// paired comparisons).
absl::StatusOr<SteinerEstimate> SteinerPointOver(
    const Polytope& k, const std::vector<Point>& directions);

struct ProjectionOptions {
  double tol = 1e-8;
  int max_iter = 100000;
};

struct ProjectionResult {
  Point point;
  int iterations = 0;
  // False when max_iter sweeps ran without meeting tol; point is then the
  // last iterate.
  bool converged = true;
};

// Euclidean projection onto K by Dykstra's alternating projections over the
// halfspaces in list order. Stops when a full sweep moves the iterate by
// less than tol. Errors: Infeasible (no feasible witness), DimensionMismatch.
absl::StatusOr<ProjectionResult> Project(const Polytope& k, const Point& x,
                                         const ProjectionOptions& opts = {});

}  // namespace floatbody

#endif  // FLOATBODY_GEOMETRY_H_
