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

#ifndef SHAPAUDIT_CORE_CSV_H_
#define SHAPAUDIT_CORE_CSV_H_

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

namespace shapaudit {

// 17 significant digits: enough to round-trip any binary64 value. NaN is
// written as an empty field.
inline std::string FormatDouble(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC 4180 quoting: fields containing a comma, quote, CR or LF are wrapped in
// double quotes with embedded quotes doubled.
inline std::string QuoteCsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_CSV_H_
