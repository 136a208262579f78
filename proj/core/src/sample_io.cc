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

#include "floatbody/sample_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "floatbody/status.h"
#include "nlohmann/json.hpp"

namespace floatbody {

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string SampleToCsv(const Sample& x) {
  std::string out;
  for (int64_t i = 0; i < x.n(); ++i) {
    auto r = x.row(i);
    for (int j = 0; j < x.d(); ++j) {
      if (j > 0) out += ',';
      out += FormatDouble(r[j]);
    }
    out += '\n';
  }
  return out;
}

absl::StatusOr<Sample> SampleFromCsv(std::string_view text) {
  std::vector<double> data;
  int d = -1;
  int64_t n = 0;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    int cols = 0;
    size_t p = 0;
    while (true) {
      size_t comma = line.find(',', p);
      std::string_view cell =
          line.substr(p, comma == std::string_view::npos ? line.size() - p
                                                         : comma - p);
      while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
      while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        return Error(ErrorKind::kIo, "line ", line_no, ": cannot parse '",
                     std::string(cell), "' as a number");
      }
      data.push_back(v);
      ++cols;
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    if (d < 0) d = cols;
    if (cols != d) {
      return Error(ErrorKind::kDimensionMismatch, "line ", line_no, ": ", cols,
                   " columns, expected ", d);
    }
    ++n;
  }
  return Sample(n, d < 0 ? 0 : d, std::move(data));
}

std::string SampleToJson(const Sample& x) {
  // Hand-written so that numbers use the same shortest round-trip form as CSV.
  std::string out = "{\"n\": " + std::to_string(x.n()) +
                    ", \"d\": " + std::to_string(x.d()) + ", \"points\": [";
  for (int64_t i = 0; i < x.n(); ++i) {
    if (i > 0) out += ", ";
    out += '[';
    auto r = x.row(i);
    for (int j = 0; j < x.d(); ++j) {
      if (j > 0) out += ", ";
      out += FormatDouble(r[j]);
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

absl::StatusOr<Sample> SampleFromJson(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("points")) {
    return Error(ErrorKind::kIo, "sample JSON must be an object with points");
  }
  std::vector<Point> rows;
  for (const auto& row : j["points"]) {
    Point p;
    for (const auto& v : row) {
      if (!v.is_number()) return Error(ErrorKind::kIo, "non-numeric entry");
      p.push_back(v.get<double>());
    }
    rows.push_back(std::move(p));
  }
  FB_ASSIGN_OR_RETURN(Sample s, Sample::FromRows(rows));
  if (j.contains("n") && j["n"].get<int64_t>() != s.n()) {
    return Error(ErrorKind::kSizeMismatch, "n field disagrees with points");
  }
  if (j.contains("d") && s.n() > 0 && j["d"].get<int>() != s.d()) {
    return Error(ErrorKind::kDimensionMismatch, "d field disagrees");
  }
  return s;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return Error(ErrorKind::kIo, "cannot open ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return Error(ErrorKind::kIo, "cannot write ", path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return Error(ErrorKind::kIo, "write failed for ", path);
  return absl::OkStatus();
}

}  // namespace floatbody
