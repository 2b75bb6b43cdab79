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

#include "core/report.h"

#include <cmath>
#include <fstream>

#include "core/csv.h"
#include "core/error.h"
#include "json.hpp"

namespace shapaudit {
namespace {

void CheckColumns(std::span<const ReportRow> rows) {
  for (const auto& row : rows) {
    const auto& a = row.cells();
    const auto& b = rows.front().cells();
    bool same = a.size() == b.size();
    for (size_t c = 0; same && c < a.size(); ++c) same = a[c].first == b[c].first;
    if (!same) ThrowInvalidArgument("report rows have differing columns");
  }
}

std::string CsvCell(const ReportValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return QuoteCsvField(*s);
  if (const auto* i = std::get_if<int64_t>(&value)) return std::to_string(*i);
  return FormatDouble(std::get<double>(value));
}

}  // namespace

const ReportValue& ReportRow::Get(const std::string& column) const {
  for (const auto& [name, value] : cells_) {
    if (name == column) return value;
  }
  ThrowInvalidArgument("report row has no column \"" + column + "\"");
}

double ReportRow::GetDouble(const std::string& column) const {
  const ReportValue& v = Get(column);
  if (const auto* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

int64_t ReportRow::GetInt(const std::string& column) const {
  return std::get<int64_t>(Get(column));
}

const std::string& ReportRow::GetString(const std::string& column) const {
  return std::get<std::string>(Get(column));
}

void WriteCsv(std::span<const ReportRow> rows, std::ostream& out) {
  if (rows.empty()) return;
  CheckColumns(rows);
  const auto& header = rows.front().cells();
  for (size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << QuoteCsvField(header[c].first);
  }
  out << '\n';
  for (const auto& row : rows) {
    const auto& cells = row.cells();
    for (size_t c = 0; c < cells.size(); ++c) {
      out << (c ? "," : "") << CsvCell(cells[c].second);
    }
    out << '\n';
  }
}

void WriteJson(std::span<const ReportRow> rows, std::ostream& out) {
  CheckColumns(rows);
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json item = nlohmann::ordered_json::object();
    for (const auto& [name, value] : row.cells()) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              item[name] = std::isfinite(v) ? nlohmann::ordered_json(v)
                                            : nlohmann::ordered_json(nullptr);
            } else {
              item[name] = v;
            }
          },
          value);
    }
    doc.push_back(std::move(item));
  }
  out << doc.dump(2) << '\n';
}

void WriteReport(std::span<const ReportRow> rows, ReportFormat format,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowIo("cannot open " + path.string() + " for writing");
  if (format == ReportFormat::kCsv) {
    WriteCsv(rows, out);
  } else {
    WriteJson(rows, out);
  }
  out.flush();
  if (!out) ThrowIo("write failed for " + path.string());
}

}  // namespace shapaudit
