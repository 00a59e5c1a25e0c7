// Copyright 2026 The bstghz Authors
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

#include "bstghz/error.hpp"

namespace bst {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyModel:
            return "EmptyModel";
        case ErrorCode::CycleDetected:
            return "CycleDetected";
        case ErrorCode::UnknownPoint:
            return "UnknownPoint";
        case ErrorCode::DuplicatePoint:
            return "DuplicatePoint";
        case ErrorCode::SameHistory:
            return "SameHistory";
        case ErrorCode::MisclassifiedEvent:
            return "MisclassifiedEvent";
        case ErrorCode::InvalidSpread:
            return "InvalidSpread";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::NotEigenstate:
            return "NotEigenstate";
        case ErrorCode::NotInconsistencyType:
            return "NotInconsistencyType";
        case ErrorCode::PreconditionFailed:
            return "PreconditionFailed";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::UnknownReference:
            return "UnknownReference";
        case ErrorCode::BadFlag:
            return "BadFlag";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace bst
