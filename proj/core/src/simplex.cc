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

#include "floatbody/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floatbody {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

// Tableau for min <cost, y> s.t. T y = rhs, y >= 0 with rows = dim and
// columns = m constraint columns followed by dim artificials.
class Tableau {
 public:
  Tableau(const std::vector<Halfspace>& cons, int dim, const Point& c)
      : rows_(dim),
        m_(static_cast<int>(cons.size())),
        cols_(m_ + dim),
        t_(static_cast<size_t>(rows_) * cols_, 0.0),
        rhs_(rows_),
        sign_(rows_),
        basis_(rows_),
        z_(cols_, 0.0) {
    for (int i = 0; i < rows_; ++i) {
      sign_[i] = c[i] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < m_; ++j) at(i, j) = sign_[i] * cons[j].normal[i];
      at(i, m_ + i) = 1.0;
      rhs_[i] = sign_[i] * c[i];
      basis_[i] = m_ + i;
    }
  }

  double& at(int i, int j) { return t_[static_cast<size_t>(i) * cols_ + j]; }
  double at(int i, int j) const {
    return t_[static_cast<size_t>(i) * cols_ + j];
  }

  // Loads reduced costs for the given column costs of the current basis.
  void Price(const std::vector<double>& cost) {
    for (int j = 0; j < cols_; ++j) {
      double s = cost[j];
      for (int i = 0; i < rows_; ++i) s -= cost[basis_[i]] * at(i, j);
      z_[j] = s;
    }
    z_rhs_ = 0.0;
    for (int i = 0; i < rows_; ++i) z_rhs_ -= cost[basis_[i]] * rhs_[i];
  }

  // Runs simplex iterations over the first `enter_limit` columns.
  // Returns kOptimal, kPrimalInfeasible (unbounded min) or kIterationLimit.
  LpOutcome Iterate(int enter_limit, int max_pivots, int* pivots) {
    bool bland = false;
    while (true) {
      if (*pivots >= max_pivots) return LpOutcome::kIterationLimit;
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < enter_limit; ++j) {
        if (z_[j] < best) {
          enter = j;
          if (bland) break;
          best = z_[j];
        }
      }
      if (enter < 0) return LpOutcome::kOptimal;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        double a = at(i, enter);
        if (a <= kPivotTol) continue;
        double ratio = rhs_[i] / a;
        const double slack = 1e-13 * (1.0 + std::abs(best_ratio));
        if (leave < 0 || ratio < best_ratio - slack ||
            (std::abs(ratio - best_ratio) <= slack &&
             basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpOutcome::kPrimalInfeasible;
      bland = best_ratio <= 1e-14;
      Pivot(leave, enter);
      ++*pivots;
    }
  }

  void Pivot(int r, int e) {
    const double p = at(r, e);
    for (int j = 0; j < cols_; ++j) at(r, j) /= p;
    rhs_[r] /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, e) = 0.0;
      rhs_[i] -= f * rhs_[r];
      if (rhs_[i] < 0.0 && rhs_[i] > -1e-13) rhs_[i] = 0.0;
    }
    const double fz = z_[e];
    if (fz != 0.0) {
      for (int j = 0; j < cols_; ++j) z_[j] -= fz * at(r, j);
      z_[e] = 0.0;
      z_rhs_ -= fz * rhs_[r];
    }
    basis_[r] = e;
  }

  // Pivots basic artificials out where a constraint column is available.
  void DriveOutArtificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < m_) continue;
      int best = -1;
      double best_abs = 1e-9;
      for (int j = 0; j < m_; ++j) {
        if (std::abs(at(i, j)) > best_abs) {
          best_abs = std::abs(at(i, j));
          best = j;
        }
      }
      if (best >= 0) Pivot(i, best);
    }
  }

  int rows() const { return rows_; }
  int m() const { return m_; }
  int cols() const { return cols_; }
  double objective() const { return -z_rhs_; }
  double z(int j) const { return z_[j]; }
  double sign(int i) const { return sign_[i]; }
  int basis(int i) const { return basis_[i]; }

 private:
  int rows_;
  int m_;
  int cols_;
  std::vector<double> t_;
  std::vector<double> rhs_;
  std::vector<double> sign_;
  std::vector<int> basis_;
  std::vector<double> z_;
  double z_rhs_ = 0.0;
};

}  // namespace

bool SolveSquare(std::vector<std::vector<double>> m, std::vector<double> rhs,
                 std::vector<double>* x) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-12) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  x->assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int k = r + 1; k < n; ++k) s -= m[r][k] * (*x)[k];
    (*x)[r] = s / m[r][r];
  }
  return true;
}

LpSolution SolveLp(const std::vector<Halfspace>& constraints, int dim,
                   const Point& c) {
  LpSolution sol;
  Tableau tab(constraints, dim, c);
  const int m = tab.m();
  const int max_pivots = 50 * (m + dim) + 100;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost1(tab.cols(), 0.0);
  for (int i = 0; i < dim; ++i) cost1[m + i] = 1.0;
  tab.Price(cost1);
  LpOutcome out = tab.Iterate(m, max_pivots, &sol.pivots);
  if (out == LpOutcome::kIterationLimit) {
    sol.outcome = out;
    return sol;
  }
  double cscale = 1.0;
  for (double v : c) cscale += std::abs(v);
  if (tab.objective() > 1e-9 * cscale) {
    sol.outcome = LpOutcome::kDualInfeasible;
    return sol;
  }
  tab.DriveOutArtificials();

  // Phase 2: minimize <b, y>. Artificials never re-enter.
  std::vector<double> cost2(tab.cols(), 0.0);
  for (int j = 0; j < m; ++j) cost2[j] = constraints[j].offset;
  tab.Price(cost2);
  out = tab.Iterate(m, max_pivots, &sol.pivots);
  if (out != LpOutcome::kOptimal) {
    sol.outcome = out;
    return sol;
  }

  // Multipliers of the (sign-adjusted) equality rows are the primal point.
  sol.x.assign(dim, 0.0);
  for (int i = 0; i < dim; ++i) sol.x[i] = -tab.sign(i) * tab.z(m + i);

  // With a full basis of constraint columns, re-solve the active system for
  // an accurate vertex.
  std::vector<int> active;
  for (int i = 0; i < dim; ++i) {
    if (tab.basis(i) < m) active.push_back(tab.basis(i));
  }
  if (static_cast<int>(active.size()) == dim) {
    std::vector<std::vector<double>> a(dim);
    std::vector<double> b(dim);
    for (int r = 0; r < dim; ++r) {
      a[r] = constraints[active[r]].normal;
      b[r] = constraints[active[r]].offset;
    }
    std::vector<double> x;
    if (SolveSquare(a, b, &x)) {
      double worst = -std::numeric_limits<double>::infinity();
      for (const Halfspace& h : constraints) {
        worst = std::max(worst, Dot(h.normal, x) - h.offset);
      }
      if (worst <= 1e-9 * (1.0 + Norm2(x))) sol.x = std::move(x);
    }
  }
  sol.value = Dot(c, sol.x);
  sol.outcome = LpOutcome::kOptimal;
  return sol;
}

}  // namespace floatbody
