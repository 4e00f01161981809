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

#include "tradeoff/common/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace tradeoff {
namespace {

bool NeedsQuoting(std::string_view field) {
  if (field.empty()) return false;
  if (field.front() == ' ' || field.back() == ' ') return true;
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

}  // namespace

absl::StatusOr<CsvTable> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;      // inside a quoted section
  bool was_quoted = false;  // current field had a quoted section
  bool any_content = false;
  size_t line = 1;

  auto end_field = [&]() {
    record.push_back(was_quoted ? field
                                : std::string(absl::StripAsciiWhitespace(field)));
    field.clear();
    was_quoted = false;
  };
  auto end_record = [&]() {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty() && !any_content;
    if (!blank) records.push_back(std::move(record));
    record.clear();
    any_content = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!absl::StripAsciiWhitespace(field).empty()) {
          return absl::InvalidArgumentError(
              absl::StrCat("csv line ", line, ": stray quote inside field"));
        }
        field.clear();
        quoted = true;
        was_quoted = true;
        any_content = true;
        break;
      case ',':
        end_field();
        any_content = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (c != ' ' && c != '\t') any_content = true;
        field.push_back(c);
    }
  }
  if (quoted) {
    return absl::InvalidArgumentError("csv: unterminated quoted field");
  }
  if (!field.empty() || !record.empty() || was_quoted) end_record();

  if (records.empty()) return absl::InvalidArgumentError("csv: no header row");
  CsvTable table;
  table.header = std::move(records.front());
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "csv record ", r + 1, " has ", records[r].size(),
          " fields; header has ", table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<CsvTable> ReadCsvFile(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<CsvTable> table = ParseCsv(*text);
  if (!table.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", table.status().message()));
  }
  return table;
}

std::string FormatCsvRow(std::span<const std::string> fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    if (NeedsQuoting(fields[i])) {
      out.push_back('"');
      for (const char c : fields[i]) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
      }
      out.push_back('"');
    } else {
      out += fields[i];
    }
  }
  return out;
}

std::string FormatCsv(const CsvTable& table) {
  std::string out = FormatCsvRow(table.header);
  out.push_back('\n');
  for (const auto& row : table.rows) {
    out += FormatCsvRow(row);
    out.push_back('\n');
  }
  return out;
}

absl::Status WriteCsvFile(const std::string& path, const CsvTable& table) {
  return WriteTextFile(path, FormatCsv(table));
}

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::optional<double> ParseNumber(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace tradeoff
