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

#ifndef FLOATBODY_LEDGER_H_
#define FLOATBODY_LEDGER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace floatbody {

// Rows [begin, end) of the input sample consumed by one batch.
struct BatchRange {
  int64_t id = 0;
  int64_t begin = 0;
  int64_t end = 0;
};

struct LedgerCall {
  std::string op;
  // End-to-end epsilon of the release.
  double epsilon = 0.0;
  // Level at which the restricted mechanism is private on the typical set.
  double restricted_epsilon = 0.0;
  int64_t batch = 0;
  int64_t rows = 0;
};

// Records epsilon spent per call. Batches are disjoint row ranges, so the
// total is the largest per-batch sum (parallel composition); the naive sum
// over all calls is kept next to it.
class PrivacyLedger {
 public:
  // Registers a batch. Errors: InvalidParams when the range is empty or
  // overlaps an existing batch, or the id is reused with another range.
  absl::Status AddBatch(int64_t id, int64_t begin, int64_t end);

  // Errors: InvalidParams for an unknown batch or negative epsilon.
  absl::Status Charge(const std::string& op, double epsilon, int64_t batch);

  double total_epsilon() const;
  double naive_sum() const;
  double BatchEpsilon(int64_t batch) const;
  bool Disjoint() const;

  const std::vector<LedgerCall>& calls() const { return calls_; }
  const std::vector<BatchRange>& batches() const { return batches_; }

  std::string ToJson() const;

 private:
  const BatchRange* FindBatch(int64_t id) const;

  std::vector<BatchRange> batches_;
  std::vector<LedgerCall> calls_;
};

}  // namespace floatbody

#endif  // FLOATBODY_LEDGER_H_
