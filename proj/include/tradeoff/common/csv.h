// Copyright 2026 The Tradeoff Bench Authors
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

// Comma-separated text: first row is the header, double quotes escape
// separators, unquoted fields are trimmed of surrounding blanks.

#ifndef TRADEOFF_COMMON_CSV_H_
#define TRADEOFF_COMMON_CSV_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tradeoff {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

absl::StatusOr<CsvTable> ParseCsv(std::string_view text);
absl::StatusOr<CsvTable> ReadCsvFile(const std::string& path);

std::string FormatCsvRow(std::span<const std::string> fields);
std::string FormatCsv(const CsvTable& table);
absl::Status WriteCsvFile(const std::string& path, const CsvTable& table);

// Shortest decimal text that parses back to the same double.
std::string FormatNumber(double value);

// Strict parse of a whole field as a finite double.
std::optional<double> ParseNumber(std::string_view text);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, std::string_view contents);

}  // namespace tradeoff

#endif  // TRADEOFF_COMMON_CSV_H_
