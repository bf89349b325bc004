// Copyright 2026 The Mousetrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mousetrap {

/// Failure categories. The numeric values double as process exit codes.
enum class ErrorKind : int {
  Validation = 2,  ///< bad input, bad configuration, unsupported request
  Numerical = 3,   ///< non-convergence or an ill-conditioned numerical step
  Io = 4,          ///< file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& what) {
  throw Error(ErrorKind::Validation, what);
}
[[noreturn]] inline void fail_numerical(const std::string& what) {
  throw Error(ErrorKind::Numerical, what);
}
[[noreturn]] inline void fail_io(const std::string& what) { throw Error(ErrorKind::Io, what); }

}  // namespace mousetrap
