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

#include "qlan/error.hpp"

#include <sstream>

namespace qlan {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotUnitTrace:
            return "NotUnitTrace";
        case ErrorCode::NotPSD:
            return "NotPSD";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::GapTooSmall:
            return "GapTooSmall";
        case ErrorCode::DiagonalOutOfRange:
            return "DiagonalOutOfRange";
        case ErrorCode::NotLocal:
            return "NotLocal";
        case ErrorCode::UnsupportedDimension:
            return "UnsupportedDimension";
        case ErrorCode::LengthMismatch:
            return "LengthMismatch";
        case ErrorCode::NotSPD:
            return "NotSPD";
        case ErrorCode::IndexMismatch:
            return "IndexMismatch";
        case ErrorCode::DegenerateFunctional:
            return "DegenerateFunctional";
        case ErrorCode::TooLarge:
            return "TooLarge";
        case ErrorCode::NotSemistandard:
            return "NotSemistandard";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::ConfigError:
            return "ConfigError";
    }
    return "Unknown";
}

static std::string format_message(ErrorCode code, const std::string &message) {
    std::ostringstream out;
    out << error_code_name(code) << ": " << message;
    return out.str();
}

Error::Error(ErrorCode code, const std::string &message, double magnitude)
    : std::runtime_error(format_message(code, message)), code_(code), magnitude_(magnitude) {
}

}  // namespace qlan
