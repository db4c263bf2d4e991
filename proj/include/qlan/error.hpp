// Copyright 2026 The qlan Authors
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

#ifndef QLAN_ERROR_HPP
#define QLAN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qlan {

enum class ErrorCode {
    NotHermitian,
    NotUnitTrace,
    NotPSD,
    DimensionMismatch,
    GapTooSmall,
    DiagonalOutOfRange,
    NotLocal,
    UnsupportedDimension,
    LengthMismatch,
    NotSPD,
    IndexMismatch,
    DegenerateFunctional,
    TooLarge,
    NotSemistandard,
    InvalidArgument,
    ConfigError,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library. `magnitude` carries the size of the
/// violation when there is one (e.g. the most negative eigenvalue for NotPSD).
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message, double magnitude = 0.0);
    ErrorCode code() const noexcept {
        return code_;
    }
    double magnitude() const noexcept {
        return magnitude_;
    }

   private:
    ErrorCode code_;
    double magnitude_;
};

}  // namespace qlan

#endif
