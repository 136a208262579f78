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

#ifndef FLOATBODY_TYPICAL_SET_H_
#define FLOATBODY_TYPICAL_SET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "floatbody/admissible.h"
#include "floatbody/geometry.h"
#include "floatbody/types.h"

namespace floatbody {

struct TypicalSetConfig {
  double w = 2.0;
  AdmissibleParams params;
  int64_t n = 0;
};

// W > 1 and n > 2W/L.
absl::Status ValidateTypicalSetConfig(const TypicalSetConfig& cfg);

// c_w * (min(ln |A|, d) + ln(1/beta)).
double RecommendW(size_t net_size, int d, double beta, double c_w = 4.0);

// Largest kappa checked: floor((L r / 2W) n).
int64_t KappaMax(const TypicalSetConfig& cfg);

struct DirectionCheck {
  bool pass = true;
  // The kappa range is empty, so the count conditions hold trivially.
  bool vacuous = false;
  int64_t kappa_max = 0;
  // First kappa whose right or left count fell short; 0 if none.
  int64_t failing_kappa = 0;
  // "", "right-count", "left-count", "quantile-bound" or "norm-bound".
  std::string failed_condition;
  double quantile = 0.0;
};

// Membership of X in the typical set H_W^theta: for every kappa in
// {1..KappaMax}, at least kappa+1 projections fall in [Q, Q + kappa W/(Ln)]
// and in [Q - kappa W/(Ln), Q]; Q lies in [-R_max - r/2, R_max + r/2] (with
// 1e-12 slack); every projection is at most B.
absl::StatusOr<DirectionCheck> CheckDirection(const Sample& x,
                                              const Point& theta,
                                              const TypicalSetConfig& cfg);

struct TypicalReport {
  bool pass = true;
  bool vacuous = false;
  std::vector<DirectionCheck> directions;
  size_t failed_directions = 0;
  InscribedBall ball;
  // Chebyshev radius of the floating body is at least R_min/2.
  bool ball_pass = true;
  std::string first_failure;
};

// Membership in H_W(A): every direction passes and the floating body over A
// contains a ball of radius R_min/2 (1e-9 slack). Errors: EmptyNet,
// DimensionMismatch, SizeMismatch (X.n() != cfg.n), InvalidParams.
absl::StatusOr<TypicalReport> CheckTypical(const Sample& x,
                                           const DirectionNet& net,
                                           const TypicalSetConfig& cfg);

// (2W / (L n)) d_H: bound on delta_q between neighbours that both lie in the
// typical set.
double SensitivityBound(const TypicalSetConfig& cfg, int64_t d_h);

}  // namespace floatbody

#endif  // FLOATBODY_TYPICAL_SET_H_
