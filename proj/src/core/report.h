/*
 * Copyright 2026 The shapaudit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SHAPAUDIT_CORE_REPORT_H_
#define SHAPAUDIT_CORE_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace shapaudit {

using ReportValue = std::variant<std::string, double, int64_t>;

// One output record: an ordered list of named cells. Every row of one report
// carries the same columns in the same order.
class ReportRow {
 public:
  void Set(std::string column, ReportValue value) {
    cells_.emplace_back(std::move(column), std::move(value));
  }
  const std::vector<std::pair<std::string, ReportValue>>& cells() const {
    return cells_;
  }
  // Value of `column`; throws if absent.
  const ReportValue& Get(const std::string& column) const;
  double GetDouble(const std::string& column) const;
  int64_t GetInt(const std::string& column) const;
  const std::string& GetString(const std::string& column) const;

 private:
  std::vector<std::pair<std::string, ReportValue>> cells_;
};

enum class ReportFormat { kCsv, kJson };

// Header row, RFC 4180 quoting, 17 significant digits, '\n' line endings.
// NaN cells are left empty.
void WriteCsv(std::span<const ReportRow> rows, std::ostream& out);

// A JSON array of objects; NaN cells become null.
void WriteJson(std::span<const ReportRow> rows, std::ostream& out);

void WriteReport(std::span<const ReportRow> rows, ReportFormat format,
                 const std::filesystem::path& path);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_REPORT_H_
