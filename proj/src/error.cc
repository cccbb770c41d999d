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

#include "msteer/error.h"

namespace msteer {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidState:
            return "invalid-state";
        case ErrorKind::InvalidOperator:
            return "invalid-operator";
        case ErrorKind::InvalidAxis:
            return "invalid-axis";
        case ErrorKind::InvalidAngle:
            return "invalid-angle";
        case ErrorKind::InvalidParameter:
            return "invalid-parameter";
        case ErrorKind::InvalidSchedule:
            return "invalid-schedule";
        case ErrorKind::InvalidTime:
            return "invalid-time";
        case ErrorKind::DegenerateProblem:
            return "degenerate-problem";
        case ErrorKind::ResourceLimit:
            return "resource-limit";
        case ErrorKind::InvariantViolation:
            return "invariant-violation";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {
}

}  // namespace msteer
