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

#ifndef FLOATBODY_GAMMA_SEGMENT_H_
#define FLOATBODY_GAMMA_SEGMENT_H_

#include <vector>

#include "absl/status/statusor.h"

namespace floatbody {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule MakeGaussLegendre(int n);

// g_k(x) = x^k + k g_{k-1}(x), g_0 = 1. Equals sum_j k!/j! x^j.
double GPoly(int k, double x);

// log g_k(x) for x > 0, stable for large k and x.
double LogGPoly(int k, double x);

// log of int_x^inf t^k e^{-t} dt = log(g_k(x) e^{-x}), x >= 0.
double LogUpperGammaIntegral(int k, double x);

// log of int_0^x t^k e^{-t} dt, x > 0.
double LogLowerGammaIntegral(int k, double x);

// int_a^b t^k e^{-t} dt = g_k(a) e^{-a} - g_k(b) e^{-b} for 0 <= a < b.
//
// Evaluated in the log domain on either side of the mode k so neither tail
// cancels against k!. When the segment carries a tiny fraction of its
// cumulative mass (a close to b) the difference is ill-conditioned and a
// composite Gauss-Legendre rule over [a, b] is used instead.
// Errors: InvalidParams for k < 0, a < 0 or b <= a.
absl::StatusOr<double> SegmentGammaIntegral(double a, double b, int k);

// Log of the same integral; b may be +infinity.
absl::StatusOr<double> LogSegmentGammaIntegral(double a, double b, int k);

}  // namespace floatbody

#endif  // FLOATBODY_GAMMA_SEGMENT_H_
