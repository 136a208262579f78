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

#ifndef FLOATBODY_STATUS_H_
#define FLOATBODY_STATUS_H_

#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace floatbody {

// Domain error kinds. Each status produced by the library carries its kind as
// a payload and as a "Kind: " prefix of the message.
enum class ErrorKind {
  kNone,
  kUnbounded,
  kInfeasible,
  kDegenerate,
  kMaxIterExceeded,
  kDimensionMismatch,
  kInvalidQuantile,
  kEmptyNet,
  kEmptyBody,
  kInvalidParams,
  kAlphaTooLarge,
  kKTooSmall,
  kRejectionStall,
  kTypicalityGateFailed,
  kInsufficientRows,
  kOracleFailure,
  kInvalidProbe,
  kEmptyH,
  kSizeMismatch,
  kTooLarge,
  kInvalidConfig,
  kIo,
  kInternal,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

template <typename... Args>
absl::Status Error(ErrorKind kind, const Args&... args) {
  return MakeError(kind, absl::StrCat(args...));
}

// kNone for OK statuses and for statuses not created by this library.
ErrorKind ErrorKindOf(const absl::Status& status);

}  // namespace floatbody

#define FB_RETURN_IF_ERROR(expr)          \
  do {                                    \
    absl::Status fb_status_ = (expr);     \
    if (!fb_status_.ok()) return fb_status_; \
  } while (0)

#define FB_CONCAT_INNER_(a, b) a##b
#define FB_CONCAT_(a, b) FB_CONCAT_INNER_(a, b)
#define FB_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  if (!tmp.ok()) return tmp.status();             \
  lhs = std::move(tmp).value()
#define FB_ASSIGN_OR_RETURN(lhs, expr) \
  FB_ASSIGN_OR_RETURN_IMPL_(FB_CONCAT_(fb_statusor_, __LINE__), lhs, expr)

#endif  // FLOATBODY_STATUS_H_
