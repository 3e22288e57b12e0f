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

#include "cie/error.h"

namespace cie {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kLookup: return "lookup error";
    case ErrorKind::kInfeasible: return "infeasible candidate";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kZeroSupport: return "zero support";
    case ErrorKind::kUndefinedSubspace: return "undefined subspace";
  }
  return "error";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return 3;
    case ErrorKind::kSchema: return 4;
    case ErrorKind::kLookup: return 5;
    case ErrorKind::kInfeasible: return 6;
    case ErrorKind::kIo: return 7;
    case ErrorKind::kEmptyInput: return 8;
    case ErrorKind::kInvalidArgument: return 9;
    case ErrorKind::kZeroSupport: return 10;
    case ErrorKind::kUndefinedSubspace: return 11;
  }
  return 1;
}

}  // namespace cie
