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

#ifndef SHAPAUDIT_CORE_ERROR_H_
#define SHAPAUDIT_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace shapaudit {

enum class ErrorCode {
  kInvalidArgument,
  // Problem size exceeds what exact lattice computation supports.
  kCapacity,
  // Malformed or inconsistent input data (game files, datasets).
  kValidation,
  kNumeric,
  kIo,
};

// Every failure raised by the core carries one of the codes above; the C API
// maps them one-to-one onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void ThrowInvalidArgument(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}
[[noreturn]] inline void ThrowCapacity(const std::string& message) {
  throw Error(ErrorCode::kCapacity, message);
}
[[noreturn]] inline void ThrowValidation(const std::string& message) {
  throw Error(ErrorCode::kValidation, message);
}
[[noreturn]] inline void ThrowNumeric(const std::string& message) {
  throw Error(ErrorCode::kNumeric, message);
}
[[noreturn]] inline void ThrowIo(const std::string& message) {
  throw Error(ErrorCode::kIo, message);
}

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_ERROR_H_
