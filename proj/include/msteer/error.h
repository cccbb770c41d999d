// Copyright 2026 The measure_steer Authors
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

#ifndef MSTEER_ERROR_H
#define MSTEER_ERROR_H

#include <stdexcept>
#include <string>

namespace msteer {

enum class ErrorKind {
    InvalidState,
    InvalidOperator,
    InvalidAxis,
    InvalidAngle,
    InvalidParameter,
    InvalidSchedule,
    InvalidTime,
    DegenerateProblem,
    ResourceLimit,
    InvariantViolation,
};

const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library. `kind()` lets callers (the CLI in
/// particular) map failures to exit codes without parsing messages.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what);
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace msteer

#endif
