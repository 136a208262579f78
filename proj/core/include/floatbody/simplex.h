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

#ifndef FLOATBODY_SIMPLEX_H_
#define FLOATBODY_SIMPLEX_H_

#include <vector>

#include "floatbody/types.h"

namespace floatbody {

enum class LpOutcome {
  kOptimal,
  // The dual has no feasible point: the primal is unbounded or infeasible.
  kDualInfeasible,
  // The dual is unbounded: the primal is infeasible.
  kPrimalInfeasible,
  kIterationLimit,
};

struct LpSolution {
  LpOutcome outcome = LpOutcome::kOptimal;
  Point x;
  double value = 0.0;
  int pivots = 0;
};

// max <c, x> subject to <a_i, x> <= b_i, x free.
//
// Solved as the dual standard-form program min <b, y>, A^T y = c, y >= 0 with
// a dense two-phase tableau of dim rows, so the cost per pivot is linear in
// the number of constraints. Pricing is Dantzig's rule; after a degenerate
// pivot the next choice falls back to Bland's rule so the method cannot
// cycle. The maximizer is recovered from the final basis.
LpSolution SolveLp(const std::vector<Halfspace>& constraints, int dim,
                   const Point& c);

// Solves the dense square system m x = rhs by partial pivoting. Returns false
// if m is numerically singular.
bool SolveSquare(std::vector<std::vector<double>> m, std::vector<double> rhs,
                 std::vector<double>* x);

}  // namespace floatbody

#endif  // FLOATBODY_SIMPLEX_H_
