// Copyright 2026 The CIE Authors
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

#ifndef CIE_ERROR_H_
#define CIE_ERROR_H_

#include <stdexcept>
#include <string>

namespace cie {

// Failure categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  kParse,
  kSchema,
  kEmptyInput,
  kLookup,
  kInfeasible,
  kIo,
  kInvalidArgument,
  kZeroSupport,
  kUndefinedSubspace,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

const char* ErrorKindName(ErrorKind kind);

// 0 is success; 1 is reserved for unexpected failures, 2 for usage errors.
int ExitCodeFor(ErrorKind kind);

}  // namespace cie

#endif  // CIE_ERROR_H_
