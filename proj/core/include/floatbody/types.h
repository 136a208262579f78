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

#ifndef FLOATBODY_TYPES_H_
#define FLOATBODY_TYPES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace floatbody {

using Point = std::vector<double>;

enum class NormKind { kL1, kL2, kLInf };

double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> a);
double NormP(std::span<const double> a, NormKind p);
double Distance(std::span<const double> a, std::span<const double> b);
double DistanceP(std::span<const double> a, std::span<const double> b,
                 NormKind p);
Point Sub(std::span<const double> a, std::span<const double> b);
Point Add(std::span<const double> a, std::span<const double> b);
// y += s * x
void Axpy(double s, std::span<const double> x, std::span<double> y);

// {x : <normal, x> <= offset}, with a unit normal.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

// Intersection of finitely many halfspaces. Normals are normalized on
// construction.
class Polytope {
 public:
  static absl::StatusOr<Polytope> Create(
      int dim, std::vector<Halfspace> halfspaces,
      std::optional<Point> feasible_witness = std::nullopt);

  int dim() const { return dim_; }
  size_t size() const { return halfspaces_.size(); }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::optional<Point>& feasible_witness() const { return witness_; }
  void set_feasible_witness(std::optional<Point> w) { witness_ = std::move(w); }

  // Largest constraint violation max_i(<a_i,x> - b_i); <= 0 inside.
  double MaxViolation(std::span<const double> x) const;
  bool Contains(std::span<const double> x, double tol = 1e-9) const {
    return MaxViolation(x) <= tol;
  }

  // Axis-aligned box [lo, hi]^dim.
  static Polytope Box(int dim, double lo, double hi);

 private:
  Polytope(int dim, std::vector<Halfspace> hs, std::optional<Point> w)
      : dim_(dim), halfspaces_(std::move(hs)), witness_(std::move(w)) {}

  int dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  std::optional<Point> witness_;
};

// n rows in R^d, stored row-major.
class Sample {
 public:
  Sample() = default;
  Sample(int64_t n, int d, std::vector<double> data);
  static absl::StatusOr<Sample> FromRows(const std::vector<Point>& rows);

  int64_t n() const { return n_; }
  int d() const { return d_; }
  std::span<const double> row(int64_t i) const {
    return {data_.data() + i * d_, static_cast<size_t>(d_)};
  }
  const std::vector<double>& data() const { return data_; }

  // <X_i, theta> for every row.
  std::vector<double> Project(std::span<const double> theta) const;

  // Rows [begin, end).
  Sample Slice(int64_t begin, int64_t end) const;

  // FNV-1a 64 over the raw row bytes.
  uint64_t SourceHash() const;

 private:
  int64_t n_ = 0;
  int d_ = 0;
  std::vector<double> data_;
};

// Number of rows in which two equal-size samples differ.
absl::StatusOr<int64_t> HammingDistance(const Sample& a, const Sample& b);

enum class NetProvenance { kRandom, kDeterministic, kAxis, kExplicit };

// A finite set of distinct unit directions.
class DirectionNet {
 public:
  static absl::StatusOr<DirectionNet> Create(
      int dim, std::vector<Point> directions,
      NetProvenance provenance = NetProvenance::kExplicit,
      std::optional<double> resolution = std::nullopt);

  int dim() const { return dim_; }
  size_t size() const { return directions_.size(); }
  const std::vector<Point>& directions() const { return directions_; }
  const Point& operator[](size_t i) const { return directions_[i]; }
  NetProvenance provenance() const { return provenance_; }
  std::optional<double> resolution() const { return resolution_; }

 private:
  DirectionNet(int dim, std::vector<Point> dirs, NetProvenance prov,
               std::optional<double> res)
      : dim_(dim),
        directions_(std::move(dirs)),
        provenance_(prov),
        resolution_(res) {}

  int dim_ = 0;
  std::vector<Point> directions_;
  NetProvenance provenance_ = NetProvenance::kExplicit;
  std::optional<double> resolution_;
};

}  // namespace floatbody

#endif  // FLOATBODY_TYPES_H_
