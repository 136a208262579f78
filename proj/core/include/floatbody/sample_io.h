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

#ifndef FLOATBODY_SAMPLE_IO_H_
#define FLOATBODY_SAMPLE_IO_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "floatbody/types.h"

namespace floatbody {

// Shortest decimal that round-trips to the same double.
std::string FormatDouble(double v);

// Headerless CSV, one row per line.
std::string SampleToCsv(const Sample& x);
absl::StatusOr<Sample> SampleFromCsv(std::string_view text);

// {"n": ..., "d": ..., "points": [[...], ...]}
std::string SampleToJson(const Sample& x);
absl::StatusOr<Sample> SampleFromJson(std::string_view text);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace floatbody

#endif  // FLOATBODY_SAMPLE_IO_H_
