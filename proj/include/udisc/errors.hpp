// Copyright 2026 The udisc Authors
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

#ifndef UDISC_ERRORS_HPP
#define UDISC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace udisc {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    BadTrace,
    BadPriors,
    NotOrthonormal,
    PairingMismatch,
    NotApplicable,
    BadAngle,
    NotUnit,
    DimensionTooLarge,
    NotReduced,
    DegenerateStates,
    EmptyOtherSet,
    Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::BadTrace: return "BadTrace";
        case ErrorKind::BadPriors: return "BadPriors";
        case ErrorKind::NotOrthonormal: return "NotOrthonormal";
        case ErrorKind::PairingMismatch: return "PairingMismatch";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::BadAngle: return "BadAngle";
        case ErrorKind::NotUnit: return "NotUnit";
        case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorKind::NotReduced: return "NotReduced";
        case ErrorKind::DegenerateStates: return "DegenerateStates";
        case ErrorKind::EmptyOtherSet: return "EmptyOtherSet";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace udisc

#endif  // UDISC_ERRORS_HPP
