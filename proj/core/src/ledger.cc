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

#include "floatbody/ledger.h"

#include <algorithm>
#include <map>

#include "floatbody/status.h"
#include "nlohmann/json.hpp"

namespace floatbody {

const BatchRange* PrivacyLedger::FindBatch(int64_t id) const {
  for (const BatchRange& b : batches_) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

absl::Status PrivacyLedger::AddBatch(int64_t id, int64_t begin, int64_t end) {
  if (!(begin < end) || begin < 0) {
    return Error(ErrorKind::kInvalidParams, "batch ", id, " has empty range [",
                 begin, ", ", end, ")");
  }
  if (const BatchRange* b = FindBatch(id)) {
    if (b->begin == begin && b->end == end) return absl::OkStatus();
    return Error(ErrorKind::kInvalidParams, "batch ", id,
                 " already registered with another range");
  }
  for (const BatchRange& b : batches_) {
    if (begin < b.end && b.begin < end) {
      return Error(ErrorKind::kInvalidParams, "batch ", id, " overlaps batch ",
                   b.id);
    }
  }
  batches_.push_back({id, begin, end});
  return absl::OkStatus();
}

absl::Status PrivacyLedger::Charge(const std::string& op, double epsilon,
                                   int64_t batch) {
  const BatchRange* b = FindBatch(batch);
  if (b == nullptr) {
    return Error(ErrorKind::kInvalidParams, "unknown batch ", batch);
  }
  if (!(epsilon >= 0.0)) {
    return Error(ErrorKind::kInvalidParams, "negative epsilon ", epsilon);
  }
  calls_.push_back({op, epsilon, epsilon / 2.0, batch, b->end - b->begin});
  return absl::OkStatus();
}

double PrivacyLedger::BatchEpsilon(int64_t batch) const {
  double s = 0.0;
  for (const LedgerCall& c : calls_) {
    if (c.batch == batch) s += c.epsilon;
  }
  return s;
}

double PrivacyLedger::total_epsilon() const {
  std::map<int64_t, double> per_batch;
  for (const LedgerCall& c : calls_) per_batch[c.batch] += c.epsilon;
  double m = 0.0;
  for (const auto& [id, eps] : per_batch) m = std::max(m, eps);
  return m;
}

double PrivacyLedger::naive_sum() const {
  double s = 0.0;
  for (const LedgerCall& c : calls_) s += c.epsilon;
  return s;
}

bool PrivacyLedger::Disjoint() const {
  std::vector<BatchRange> sorted = batches_;
  std::sort(sorted.begin(), sorted.end(),
            [](const BatchRange& a, const BatchRange& b) {
              return a.begin < b.begin;
            });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].begin < sorted[i - 1].end) return false;
  }
  return true;
}

std::string PrivacyLedger::ToJson() const {
  nlohmann::ordered_json j;
  j["total_epsilon"] = total_epsilon();
  j["naive_sum"] = naive_sum();
  j["disjoint"] = Disjoint();
  j["batches"] = nlohmann::ordered_json::array();
  for (const BatchRange& b : batches_) {
    j["batches"].push_back({{"id", b.id}, {"begin", b.begin}, {"end", b.end}});
  }
  j["calls"] = nlohmann::ordered_json::array();
  for (const LedgerCall& c : calls_) {
    j["calls"].push_back({{"op", c.op},
                          {"epsilon", c.epsilon},
                          {"restricted_epsilon", c.restricted_epsilon},
                          {"batch", c.batch},
                          {"rows", c.rows}});
  }
  return j.dump(2);
}

}  // namespace floatbody
