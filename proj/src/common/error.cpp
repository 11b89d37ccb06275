// Copyright 2026 The medforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medforge/common/error.hpp"

namespace medforge {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kMissingManifest: return "MissingManifest";
    case Errc::kMalformedSource: return "MalformedSource";
    case Errc::kDanglingGraphic: return "DanglingGraphic";
    case Errc::kDuplicateFigureId: return "DuplicateFigureId";
    case Errc::kUnknownFigureId: return "UnknownFigureId";
    case Errc::kImageDecodeError: return "ImageDecodeError";
    case Errc::kDegenerateImage: return "DegenerateImage";
    case Errc::kClassifierFailure: return "ClassifierFailure";
    case Errc::kAuthError: return "AuthError";
    case Errc::kRateLimitExhausted: return "RateLimitExhausted";
    case Errc::kBackendRefusal: return "BackendRefusal";
    case Errc::kMalformedReply: return "MalformedReply";
    case Errc::kUnparseableReply: return "UnparseableReply";
    case Errc::kInsufficientPanels: return "InsufficientPanels";
    case Errc::kFigureRejected: return "FigureRejected";
    case Errc::kEmptyItemSet: return "EmptyItemSet";
    case Errc::kDegenerateMatrix: return "DegenerateMatrix";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kIllegalScore: return "IllegalScore";
    case Errc::kInsufficientRecords: return "InsufficientRecords";
    case Errc::kDuplicateVerdict: return "DuplicateVerdict";
    case Errc::kTerminalState: return "TerminalState";
    case Errc::kUnknownItem: return "UnknownItem";
    case Errc::kStaleRevision: return "StaleRevision";
    case Errc::kNoDualVerdicts: return "NoDualVerdicts";
    case Errc::kQuotaUnmet: return "QuotaUnmet";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

nlohmann::json Error::ToJson() const {
  nlohmann::json j;
  j["error"] = std::string(ErrcName(code_));
  j["message"] = message_;
  if (!detail_.is_null()) j["detail"] = detail_;
  return j;
}

}  // namespace medforge
