// Copyright 2026 The kdcalc Authors
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

#include "kdcalc/error.hpp"

namespace kdcalc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::NotNormalized:
            return "NotNormalized";
        case ErrorKind::NotOrthonormal:
            return "NotOrthonormal";
        case ErrorKind::DuplicateLabel:
            return "DuplicateLabel";
        case ErrorKind::InvalidState:
            return "InvalidState";
        case ErrorKind::InvalidDistribution:
            return "InvalidDistribution";
        case ErrorKind::InvalidArgument:
            return "InvalidArgument";
        case ErrorKind::OverlapTooSmall:
            return "OverlapTooSmall";
        case ErrorKind::ImaginaryLeak:
            return "ImaginaryLeak";
        case ErrorKind::UndefinedCells:
            return "UndefinedCells";
        case ErrorKind::BasisTagMismatch:
            return "BasisTagMismatch";
        case ErrorKind::ZeroWeakValue:
            return "ZeroWeakValue";
        case ErrorKind::PostselectionImpossible:
            return "PostselectionImpossible";
        case ErrorKind::ShotBudgetZero:
            return "ShotBudgetZero";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

}  // namespace kdcalc
