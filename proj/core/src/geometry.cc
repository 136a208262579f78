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

#include "floatbody/geometry.h"

#include <algorithm>
#include <cmath>

#include "floatbody/simplex.h"
#include "floatbody/status.h"

namespace floatbody {

absl::StatusOr<InscribedBall> ChebyshevBall(const Polytope& k) {
  const int d = k.dim();
  std::vector<Halfspace> aug;
  aug.reserve(k.size());
  for (const Halfspace& h : k.halfspaces()) {
    Halfspace g;
    g.normal = h.normal;
    g.normal.push_back(1.0);
    g.offset = h.offset;
    aug.push_back(std::move(g));
  }
  Point c(d + 1, 0.0);
  c[d] = 1.0;
  LpSolution sol = SolveLp(aug, d + 1, c);
  switch (sol.outcome) {
    case LpOutcome::kOptimal:
      break;
    case LpOutcome::kDualInfeasible:
      return Error(ErrorKind::kUnbounded,
                   "polytope contains arbitrarily large balls");
    case LpOutcome::kPrimalInfeasible:
      return Error(ErrorKind::kInternal, "Chebyshev LP reported infeasible");
    case LpOutcome::kIterationLimit:
      return Error(ErrorKind::kInternal, "Chebyshev LP hit the pivot limit");
  }
  InscribedBall ball;
  ball.center.assign(sol.x.begin(), sol.x.begin() + d);
  ball.lp_radius = sol.x[d];
  ball.empty = ball.lp_radius < -1e-12;
  ball.radius = std::max(ball.lp_radius, 0.0);
  return ball;
}

absl::StatusOr<SupportResult> SupportFunction(const Polytope& k,
                                              const Point& theta) {
  if (static_cast<int>(theta.size()) != k.dim()) {
    return Error(ErrorKind::kDimensionMismatch, "direction has dimension ",
                 theta.size(), ", polytope has ", k.dim());
  }
  LpSolution sol = SolveLp(k.halfspaces(), k.dim(), theta);
  switch (sol.outcome) {
    case LpOutcome::kOptimal:
      return SupportResult{sol.value, std::move(sol.x)};
    case LpOutcome::kPrimalInfeasible:
      return Error(ErrorKind::kInfeasible, "polytope is empty");
    case LpOutcome::kIterationLimit:
      return Error(ErrorKind::kInternal, "support LP hit the pivot limit");
    case LpOutcome::kDualInfeasible: {
      // Either unbounded in this direction or empty; the Chebyshev LP is
      // always primal feasible and tells the two apart.
      auto ball = ChebyshevBall(k);
      if (ball.ok() && ball->empty) {
        return Error(ErrorKind::kInfeasible, "polytope is empty");
      }
      return Error(ErrorKind::kUnbounded,
                   "support function is unbounded in the given direction");
    }
  }
  return Error(ErrorKind::kInternal, "unreachable");
}

absl::StatusOr<double> HausdorffNet(const Polytope& k1, const Polytope& k2,
                                    const DirectionNet& net) {
  if (k1.dim() != k2.dim() || net.dim() != k1.dim()) {
    return Error(ErrorKind::kDimensionMismatch,
                 "bodies and net must share a dimension");
  }
  double worst = 0.0;
  for (const Point& theta : net.directions()) {
    FB_ASSIGN_OR_RETURN(SupportResult a, SupportFunction(k1, theta));
    FB_ASSIGN_OR_RETURN(SupportResult b, SupportFunction(k2, theta));
    worst = std::max(worst, std::abs(a.value - b.value));
  }
  return worst;
}

absl::StatusOr<double> CircumradiusNet(const Polytope& k,
                                       const DirectionNet& net) {
  double r = 0.0;
  for (const Point& theta : net.directions()) {
    FB_ASSIGN_OR_RETURN(SupportResult s, SupportFunction(k, theta));
    r = std::max(r, Norm2(s.maximizer));
  }
  return r;
}

absl::StatusOr<SteinerEstimate> SteinerPointOver(
    const Polytope& k, const std::vector<Point>& directions) {
  const int d = k.dim();
  const int m = static_cast<int>(directions.size());
  if (m < 1) return Error(ErrorKind::kInvalidParams, "need m >= 1");
  std::vector<Point> maximizers;
  maximizers.reserve(m);
  Point mean(d, 0.0);
  for (const Point& theta : directions) {
    FB_ASSIGN_OR_RETURN(SupportResult s, SupportFunction(k, theta));
    Axpy(1.0, s.maximizer, mean);
    maximizers.push_back(std::move(s.maximizer));
  }
  for (double& v : mean) v /= m;
  double ss = 0.0;
  for (const Point& f : maximizers) {
    double dist = Distance(f, mean);
    ss += dist * dist;
  }
  SteinerEstimate est;
  est.point = std::move(mean);
  est.directions = m;
  est.std_error = m > 1 ? std::sqrt(ss / (static_cast<double>(m) * (m - 1)))
                        : 0.0;
  return est;
}

absl::StatusOr<SteinerEstimate> SteinerPoint(const Polytope& k, int m,
                                             Rng& rng) {
  if (m < 1) return Error(ErrorKind::kInvalidParams, "need m >= 1");
  std::vector<Point> dirs;
  dirs.reserve(m);
  for (int i = 0; i < m; ++i) dirs.push_back(rng.UnitSphere(k.dim()));
  return SteinerPointOver(k, dirs);
}

absl::StatusOr<ProjectionResult> Project(const Polytope& k, const Point& x,
                                         const ProjectionOptions& opts) {
  if (static_cast<int>(x.size()) != k.dim()) {
    return Error(ErrorKind::kDimensionMismatch, "point has dimension ",
                 x.size(), ", polytope has ", k.dim());
  }
  if (!k.feasible_witness().has_value()) {
    return Error(ErrorKind::kInfeasible,
                 "projection needs a polytope with a feasible witness");
  }
  const auto& hs = k.halfspaces();
  const size_t m = hs.size();
  const int d = k.dim();
  ProjectionResult res;
  res.point = x;
  Point& cur = res.point;
  // Each Dykstra correction is a nonnegative multiple of its unit normal.
  std::vector<double> lambda(m, 0.0);
  Point prev(d);
  for (int it = 1; it <= opts.max_iter; ++it) {
    prev = cur;
    bool moved = false;
    double lambda_change = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const Point& a = hs[i].normal;
      const double v = Dot(a, cur) + lambda[i] - hs[i].offset;
      const double next = v > 0.0 ? v : 0.0;
      const double step = lambda[i] - next;
      if (step != 0.0) {
        for (int j = 0; j < d; ++j) cur[j] += step * a[j];
        moved = true;
        lambda_change = std::max(lambda_change, std::abs(step));
      }
      lambda[i] = next;
    }
    res.iterations = it;
    if (!moved) {
      res.converged = true;
      return res;
    }
    // A sweep can return to its starting point while the corrections are
    // still moving between constraints, and small sweeps can stall short of
    // the set; stop only at a near fixed point that is feasible.
    if (Distance(cur, prev) < opts.tol && lambda_change < opts.tol) {
      double worst = 0.0;
      for (const Halfspace& h : hs) {
        worst = std::max(worst, Dot(h.normal, cur) - h.offset);
      }
      if (worst > opts.tol) continue;
      res.converged = true;
      return res;
    }
  }
  res.converged = false;
  return res;
}

}  // namespace floatbody
