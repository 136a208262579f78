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

#include "floatbody/wasserstein.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "floatbody/status.h"

namespace floatbody {

constexpr int kMaxPoints = 2048;

std::vector<int> SolveAssignment(const std::vector<double>& cost, int m) {
  // Shortest augmenting paths with potentials (Hungarian, O(m^3)).
  // Indices are 1-based; column 0 is the virtual source.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> match(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (int i = 1; i <= m; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      const double* row = cost.data() + static_cast<size_t>(i0 - 1) * m;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(m);
  for (int j = 1; j <= m; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

absl::StatusOr<double> WassersteinEmpirical(const std::vector<Point>& a,
                                            const std::vector<Point>& b,
                                            int p) {
  if (a.size() != b.size()) {
    return Error(ErrorKind::kSizeMismatch, "point clouds have sizes ", a.size(),
                 " and ", b.size());
  }
  if (a.empty()) return Error(ErrorKind::kInvalidParams, "empty point cloud");
  if (p != 1 && p != 2) {
    return Error(ErrorKind::kInvalidParams, "unsupported order p = ", p);
  }
  if (a.size() > static_cast<size_t>(kMaxPoints)) {
    return Error(ErrorKind::kTooLarge, a.size(), " points exceed the limit of ",
                 kMaxPoints);
  }
  const size_t d = a[0].size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != d || b[i].size() != d) {
      return Error(ErrorKind::kSizeMismatch, "points of mixed dimension");
    }
  }
  const int m = static_cast<int>(a.size());
  auto pw = [p](double dist) { return p == 1 ? dist : dist * dist; };
  double total = 0.0;
  if (d == 1) {
    std::vector<double> xs(m), ys(m);
    for (int i = 0; i < m; ++i) {
      xs[i] = a[i][0];
      ys[i] = b[i][0];
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    for (int i = 0; i < m; ++i) total += pw(std::abs(xs[i] - ys[i]));
  } else {
    std::vector<double> cost(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        cost[static_cast<size_t>(i) * m + j] = pw(Distance(a[i], b[j]));
      }
    }
    const std::vector<int> match = SolveAssignment(cost, m);
    for (int i = 0; i < m; ++i) {
      total += cost[static_cast<size_t>(i) * m + match[i]];
    }
  }
  const double mean = total / m;
  return p == 1 ? mean : std::sqrt(mean);
}

}  // namespace floatbody
