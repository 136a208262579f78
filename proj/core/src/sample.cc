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

#include <algorithm>
#include <cmath>
#include <cstring>

#include "floatbody/status.h"
#include "floatbody/types.h"

namespace floatbody {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm2(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double NormP(std::span<const double> a, NormKind p) {
  double s = 0.0;
  switch (p) {
    case NormKind::kL1:
      for (double v : a) s += std::abs(v);
      return s;
    case NormKind::kL2:
      return Norm2(a);
    case NormKind::kLInf:
      for (double v : a) s = std::max(s, std::abs(v));
      return s;
  }
  return s;
}

double Distance(std::span<const double> a, std::span<const double> b) {
  return DistanceP(a, b, NormKind::kL2);
}

double DistanceP(std::span<const double> a, std::span<const double> b,
                 NormKind p) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double t = std::abs(a[i] - b[i]);
    switch (p) {
      case NormKind::kL1:
        s += t;
        break;
      case NormKind::kL2:
        s += t * t;
        break;
      case NormKind::kLInf:
        s = std::max(s, t);
        break;
    }
  }
  return p == NormKind::kL2 ? std::sqrt(s) : s;
}

Point Sub(std::span<const double> a, std::span<const double> b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point Add(std::span<const double> a, std::span<const double> b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

void Axpy(double s, std::span<const double> x, std::span<double> y) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

absl::StatusOr<Polytope> Polytope::Create(int dim,
                                          std::vector<Halfspace> halfspaces,
                                          std::optional<Point> witness) {
  if (dim < 1) return Error(ErrorKind::kInvalidParams, "dim must be >= 1");
  for (size_t i = 0; i < halfspaces.size(); ++i) {
    Halfspace& h = halfspaces[i];
    if (static_cast<int>(h.normal.size()) != dim) {
      return Error(ErrorKind::kDimensionMismatch, "halfspace ", i,
                   " has normal of size ", h.normal.size(), ", expected ",
                   dim);
    }
    double norm = Norm2(h.normal);
    if (!(norm > 1e-300) || !std::isfinite(norm) || !std::isfinite(h.offset)) {
      return Error(ErrorKind::kDegenerate, "halfspace ", i,
                   " has a zero or non-finite normal");
    }
    for (double& v : h.normal) v /= norm;
    h.offset /= norm;
  }
  if (witness.has_value() && static_cast<int>(witness->size()) != dim) {
    return Error(ErrorKind::kDimensionMismatch, "witness has wrong dimension");
  }
  return Polytope(dim, std::move(halfspaces), std::move(witness));
}

double Polytope::MaxViolation(std::span<const double> x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Halfspace& h : halfspaces_) {
    worst = std::max(worst, Dot(h.normal, x) - h.offset);
  }
  return worst;
}

Polytope Polytope::Box(int dim, double lo, double hi) {
  std::vector<Halfspace> hs;
  for (int i = 0; i < dim; ++i) {
    Point e(dim, 0.0);
    e[i] = 1.0;
    hs.push_back({e, hi});
    e[i] = -1.0;
    hs.push_back({e, -lo});
  }
  return Polytope(dim, std::move(hs), Point(dim, 0.5 * (lo + hi)));
}

Sample::Sample(int64_t n, int d, std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {}

absl::StatusOr<Sample> Sample::FromRows(const std::vector<Point>& rows) {
  if (rows.empty()) return Sample(0, 0, {});
  const int d = static_cast<int>(rows[0].size());
  std::vector<double> data;
  data.reserve(rows.size() * d);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != d) {
      return Error(ErrorKind::kDimensionMismatch, "row ", i, " has ",
                   rows[i].size(), " columns, expected ", d);
    }
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return Sample(static_cast<int64_t>(rows.size()), d, std::move(data));
}

std::vector<double> Sample::Project(std::span<const double> theta) const {
  std::vector<double> out(n_);
  for (int64_t i = 0; i < n_; ++i) out[i] = Dot(row(i), theta);
  return out;
}

Sample Sample::Slice(int64_t begin, int64_t end) const {
  std::vector<double> data(data_.begin() + begin * d_,
                           data_.begin() + end * d_);
  return Sample(end - begin, d_, std::move(data));
}

uint64_t Sample::SourceHash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(data_.data());
  const size_t len = data_.size() * sizeof(double);
  for (size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

absl::StatusOr<int64_t> HammingDistance(const Sample& a, const Sample& b) {
  if (a.n() != b.n() || a.d() != b.d()) {
    return Error(ErrorKind::kDimensionMismatch,
                 "Hamming distance needs equal shapes");
  }
  int64_t count = 0;
  for (int64_t i = 0; i < a.n(); ++i) {
    auto ra = a.row(i);
    auto rb = b.row(i);
    if (!std::equal(ra.begin(), ra.end(), rb.begin())) ++count;
  }
  return count;
}

absl::StatusOr<DirectionNet> DirectionNet::Create(
    int dim, std::vector<Point> directions, NetProvenance provenance,
    std::optional<double> resolution) {
  if (directions.empty()) return Error(ErrorKind::kEmptyNet, "empty net");
  for (size_t i = 0; i < directions.size(); ++i) {
    Point& u = directions[i];
    if (static_cast<int>(u.size()) != dim) {
      return Error(ErrorKind::kDimensionMismatch, "direction ", i,
                   " has dimension ", u.size(), ", expected ", dim);
    }
    double norm = Norm2(u);
    if (!(norm > 1e-12)) {
      return Error(ErrorKind::kDegenerate, "direction ", i, " is zero");
    }
    for (double& v : u) v /= norm;
  }
  for (size_t i = 0; i < directions.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (Distance(directions[i], directions[j]) < 1e-12) {
        return Error(ErrorKind::kDegenerate, "directions ", j, " and ", i,
                     " coincide");
      }
    }
  }
  return DirectionNet(dim, std::move(directions), provenance, resolution);
}

}  // namespace floatbody
