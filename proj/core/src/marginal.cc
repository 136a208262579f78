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
#include <numbers>

#include "boost/math/distributions/normal.hpp"
#include "boost/math/special_functions/beta.hpp"
#include "floatbody/distribution.h"
#include "floatbody/status.h"

namespace floatbody {
namespace {

class GaussianMarginal : public Marginal {
 public:
  double Density(double t) const override {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
  }
  double Cdf(double t) const override {
    return 0.5 * std::erfc(-t / std::numbers::sqrt2);
  }
  double Quantile(double q) const override {
    return boost::math::quantile(boost::math::normal_distribution<double>(),
                                 q);
  }
};

// <X, theta> for X uniform on the d-ball of radius rad.
class BallMarginal : public Marginal {
 public:
  BallMarginal(int d, double rad) : d_(d), rad_(rad) {
    log_c_ = std::lgamma(d / 2.0 + 1.0) - 0.5 * std::log(std::numbers::pi) -
             std::lgamma((d + 1.0) / 2.0);
  }
  double Density(double t) const override {
    double s = t / rad_;
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(log_c_ + 0.5 * (d_ - 1) * std::log1p(-s * s)) / rad_;
  }
  double Cdf(double t) const override {
    double s = t / rad_;
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double half = 0.5 * boost::math::ibeta(0.5, (d_ + 1.0) / 2.0, s * s);
    return s >= 0.0 ? 0.5 + half : 0.5 - half;
  }
  double Quantile(double q) const override {
    double p = std::abs(2.0 * q - 1.0);
    double s = std::sqrt(boost::math::ibeta_inv(0.5, (d_ + 1.0) / 2.0, p));
    return rad_ * (q >= 0.5 ? s : -s);
  }

 private:
  int d_;
  double rad_;
  double log_c_;
};

// Density and CDF tabulated on a uniform grid, built by convolving the
// coordinate laws one at a time with mass-preserving cell weights.
class GridMarginal : public Marginal {
 public:
  GridMarginal(double half_width, int points)
      : lo_(-half_width),
        h_(2.0 * half_width / (points - 1)),
        f_(points, 0.0),
        cdf_(points, 0.0) {}

  double at(int i) const { return lo_ + i * h_; }
  int size() const { return static_cast<int>(f_.size()); }
  std::vector<double>& f() { return f_; }
  std::vector<double>& cdf() { return cdf_; }
  double h() const { return h_; }

  // Convolves with a symmetric kernel given by its CDF.
  template <typename KernelCdf>
  void Convolve(KernelCdf kcdf, double support) {
    const int n = size();
    const int reach = std::min(n, static_cast<int>(std::ceil(support / h_)) + 1);
    std::vector<double> w(2 * reach + 1);
    for (int j = -reach; j <= reach; ++j) {
      w[j + reach] = kcdf((j + 0.5) * h_) - kcdf((j - 0.5) * h_);
    }
    std::vector<double> nf(n, 0.0), ncdf(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double sf = 0.0, sc = 0.0;
      for (int j = -reach; j <= reach; ++j) {
        const int src = i - j;
        const double wj = w[j + reach];
        if (src < 0) continue;
        if (src >= n) {
          sc += wj;
          continue;
        }
        sf += wj * f_[src];
        sc += wj * cdf_[src];
      }
      nf[i] = sf;
      ncdf[i] = sc;
    }
    f_.swap(nf);
    cdf_.swap(ncdf);
  }

  double Density(double t) const override { return Interp(f_, t, 0.0, 0.0); }
  double Cdf(double t) const override { return Interp(cdf_, t, 0.0, 1.0); }
  double Quantile(double q) const override {
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), q);
    if (it == cdf_.begin()) return lo_;
    if (it == cdf_.end()) return at(size() - 1);
    const int i = static_cast<int>(it - cdf_.begin());
    const double c0 = cdf_[i - 1], c1 = cdf_[i];
    const double frac = c1 > c0 ? (q - c0) / (c1 - c0) : 0.0;
    return at(i - 1) + frac * h_;
  }

 private:
  double Interp(const std::vector<double>& v, double t, double left,
                double right) const {
    const double pos = (t - lo_) / h_;
    if (pos < 0.0) return left;
    if (pos >= size() - 1) return pos > size() - 1 ? right : v.back();
    const int i = static_cast<int>(pos);
    const double frac = pos - i;
    return v[i] * (1.0 - frac) + v[i + 1] * frac;
  }

  double lo_;
  double h_;
  std::vector<double> f_;
  std::vector<double> cdf_;
};

constexpr int kGridPoints = 2001;

std::unique_ptr<Marginal> CubeMarginal(const Point& theta) {
  const double half = std::sqrt(3.0);
  std::vector<double> widths;
  for (double v : theta) {
    if (std::abs(v) > 1e-12) widths.push_back(half * std::abs(v));
  }
  std::sort(widths.rbegin(), widths.rend());
  double total = 0.0;
  for (double w : widths) total += w;
  auto grid = std::make_unique<GridMarginal>(total * 1.02, kGridPoints);
  const double w0 = widths[0];
  for (int i = 0; i < grid->size(); ++i) {
    const double t = grid->at(i);
    grid->f()[i] = std::abs(t) <= w0 ? 0.5 / w0 : 0.0;
    grid->cdf()[i] = std::clamp((t + w0) / (2.0 * w0), 0.0, 1.0);
  }
  for (size_t c = 1; c < widths.size(); ++c) {
    const double w = widths[c];
    grid->Convolve(
        [w](double u) { return std::clamp((u + w) / (2.0 * w), 0.0, 1.0); },
        w);
  }
  return grid;
}

std::unique_ptr<Marginal> LaplaceMarginal(const Point& theta) {
  const double scale = IsotropicScale(DistributionKind::kProductLaplace, 1);
  std::vector<double> scales;
  for (double v : theta) {
    if (std::abs(v) > 1e-12) scales.push_back(scale * std::abs(v));
  }
  std::sort(scales.rbegin(), scales.rend());
  auto lcdf = [](double s) {
    return [s](double u) {
      return u < 0.0 ? 0.5 * std::exp(u / s) : 1.0 - 0.5 * std::exp(-u / s);
    };
  };
  // Unit variance; the tail beyond 30 is below e^-40.
  auto grid = std::make_unique<GridMarginal>(30.0, kGridPoints);
  const double s0 = scales[0];
  for (int i = 0; i < grid->size(); ++i) {
    const double t = grid->at(i);
    grid->f()[i] = std::exp(-std::abs(t) / s0) / (2.0 * s0);
    grid->cdf()[i] = lcdf(s0)(t);
  }
  for (size_t c = 1; c < scales.size(); ++c) {
    grid->Convolve(lcdf(scales[c]), 40.0 * scales[c]);
  }
  return grid;
}

}  // namespace

std::string_view DistributionKindName(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kIsotropicGaussian:
      return "isotropic-gaussian";
    case DistributionKind::kUniformBall:
      return "uniform-ball";
    case DistributionKind::kUniformCube:
      return "uniform-cube";
    case DistributionKind::kProductLaplace:
      return "product-laplace";
  }
  return "unknown";
}

absl::StatusOr<DistributionKind> ParseDistributionKind(std::string_view name) {
  for (DistributionKind k :
       {DistributionKind::kIsotropicGaussian, DistributionKind::kUniformBall,
        DistributionKind::kUniformCube, DistributionKind::kProductLaplace}) {
    if (DistributionKindName(k) == name) return k;
  }
  return Error(ErrorKind::kInvalidConfig, "unknown distribution kind '",
               std::string(name), "'");
}

double IsotropicScale(DistributionKind kind, int d) {
  switch (kind) {
    case DistributionKind::kIsotropicGaussian:
      return 1.0;
    case DistributionKind::kUniformBall:
      return std::sqrt(d + 2.0);
    case DistributionKind::kUniformCube:
      return std::sqrt(3.0);
    case DistributionKind::kProductLaplace:
      return 1.0 / std::numbers::sqrt2;
  }
  return 1.0;
}

Point DrawPoint(const DistributionSpec& spec, Rng& rng) {
  const int d = spec.d;
  const double s = IsotropicScale(spec.kind, d);
  switch (spec.kind) {
    case DistributionKind::kIsotropicGaussian:
      return rng.Gaussian(d);
    case DistributionKind::kUniformBall:
      return rng.UniformBall(d, s);
    case DistributionKind::kUniformCube: {
      Point p(d);
      for (double& v : p) v = s * (2.0 * rng.Uniform() - 1.0);
      return p;
    }
    case DistributionKind::kProductLaplace: {
      Point p(d);
      for (double& v : p) {
        double e = s * rng.Exponential();
        v = rng.Uniform() < 0.5 ? -e : e;
      }
      return p;
    }
  }
  return Point(d, 0.0);
}

absl::StatusOr<Sample> SampleDistribution(const DistributionSpec& spec,
                                          int64_t n, Rng& rng) {
  if (spec.d < 1) return Error(ErrorKind::kInvalidParams, "d must be >= 1");
  if (n < 0) return Error(ErrorKind::kInvalidParams, "n must be >= 0");
  std::vector<double> data;
  data.reserve(static_cast<size_t>(n) * spec.d);
  for (int64_t i = 0; i < n; ++i) {
    Point p = DrawPoint(spec, rng);
    data.insert(data.end(), p.begin(), p.end());
  }
  return Sample(n, spec.d, std::move(data));
}

absl::StatusOr<Sample> SampleDistribution(const DistributionSpec& spec,
                                          int64_t n) {
  Rng rng(spec.seed);
  return SampleDistribution(spec, n, rng);
}

absl::StatusOr<std::unique_ptr<Marginal>> MakeMarginal(
    const DistributionSpec& spec, const Point& theta) {
  if (static_cast<int>(theta.size()) != spec.d) {
    return Error(ErrorKind::kDimensionMismatch, "direction has dimension ",
                 theta.size(), ", law has ", spec.d);
  }
  if (std::abs(Norm2(theta) - 1.0) > 1e-9) {
    return Error(ErrorKind::kInvalidParams, "direction must be a unit vector");
  }
  switch (spec.kind) {
    case DistributionKind::kIsotropicGaussian:
      return std::unique_ptr<Marginal>(new GaussianMarginal());
    case DistributionKind::kUniformBall:
      return std::unique_ptr<Marginal>(
          new BallMarginal(spec.d, IsotropicScale(spec.kind, spec.d)));
    case DistributionKind::kUniformCube:
      return CubeMarginal(theta);
    case DistributionKind::kProductLaplace:
      return LaplaceMarginal(theta);
  }
  return Error(ErrorKind::kInternal, "unknown kind");
}

}  // namespace floatbody
