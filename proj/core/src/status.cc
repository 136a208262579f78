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

#include "floatbody/status.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"

namespace floatbody {
namespace {

constexpr char kPayloadUrl[] = "floatbody/error_kind";

struct KindEntry {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindEntry, 23> kKinds = {{
    {ErrorKind::kNone, "None", absl::StatusCode::kOk},
    {ErrorKind::kUnbounded, "Unbounded", absl::StatusCode::kOutOfRange},
    {ErrorKind::kInfeasible, "Infeasible",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kDegenerate, "Degenerate", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kMaxIterExceeded, "MaxIterExceeded",
     absl::StatusCode::kDeadlineExceeded},
    {ErrorKind::kDimensionMismatch, "DimensionMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInvalidQuantile, "InvalidQuantile",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kEmptyNet, "EmptyNet", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kEmptyBody, "EmptyBody", absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kInvalidParams, "InvalidParams",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kAlphaTooLarge, "AlphaTooLarge",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kKTooSmall, "KTooSmall", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kRejectionStall, "RejectionStall",
     absl::StatusCode::kResourceExhausted},
    {ErrorKind::kTypicalityGateFailed, "TypicalityGateFailed",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kInsufficientRows, "InsufficientRows",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kOracleFailure, "OracleFailure", absl::StatusCode::kAborted},
    {ErrorKind::kInvalidProbe, "InvalidProbe",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kEmptyH, "EmptyH", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kSizeMismatch, "SizeMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kTooLarge, "TooLarge", absl::StatusCode::kResourceExhausted},
    {ErrorKind::kInvalidConfig, "InvalidConfig",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIo, "Io", absl::StatusCode::kUnavailable},
    {ErrorKind::kInternal, "Internal", absl::StatusCode::kInternal},
}};

const KindEntry& Lookup(ErrorKind kind) {
  for (const KindEntry& e : kKinds) {
    if (e.kind == kind) return e;
  }
  return kKinds.back();
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Lookup(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindEntry& e = Lookup(kind);
  if (e.code == absl::StatusCode::kOk) return absl::OkStatus();
  // absl may ship its own string_view, so go through std::string.
  const std::string name(e.name);
  absl::Status status(e.code, absl::StrCat(name, ": ", std::string(message)));
  status.SetPayload(kPayloadUrl, absl::Cord(name));
  return status;
}

ErrorKind ErrorKindOf(const absl::Status& status) {
  if (status.ok()) return ErrorKind::kNone;
  auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return ErrorKind::kNone;
  std::string name(*payload);
  for (const KindEntry& e : kKinds) {
    if (e.name == name) return e.kind;
  }
  return ErrorKind::kNone;
}

}  // namespace floatbody
