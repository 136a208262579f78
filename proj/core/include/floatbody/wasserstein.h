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

#ifndef FLOATBODY_WASSERSTEIN_H_
#define FLOATBODY_WASSERSTEIN_H_

#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/types.h"

namespace floatbody {

// Minimum-cost perfect matching on a square cost matrix (row-major, m x m).
// Returns assignment[i] = column matched to row i.
std::vector<int> SolveAssignment(const std::vector<double>& cost, int m);

// W_p between two equal-size point clouds with uniform weights, p in {1, 2}:
// exact optimal assignment, or sorted matching when d = 1. Errors:
// SizeMismatch (different sizes or dimensions), TooLarge (m > 2048),
// InvalidParams (empty input or unsupported p).
absl::StatusOr<double> WassersteinEmpirical(const std::vector<Point>& a,
                                            const std::vector<Point>& b,
                                            int p = 2);

inline absl::StatusOr<double> Wasserstein2Empirical(
    const std::vector<Point>& a, const std::vector<Point>& b) {
  return WassersteinEmpirical(a, b, 2);
}

}  // namespace floatbody

#endif  // FLOATBODY_WASSERSTEIN_H_
