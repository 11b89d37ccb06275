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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace medforge {

// Every failure the library surfaces carries one of these codes. The CLI
// prints the code name verbatim in its machine-readable error JSON.
enum class Errc {
  kMissingManifest,
  kMalformedSource,
  kDanglingGraphic,
  kDuplicateFigureId,
  kUnknownFigureId,
  kImageDecodeError,
  kDegenerateImage,
  kClassifierFailure,
  kAuthError,
  kRateLimitExhausted,
  kBackendRefusal,
  kMalformedReply,
  kUnparseableReply,
  kInsufficientPanels,
  kFigureRejected,
  kEmptyItemSet,
  kDegenerateMatrix,
  kEmptyInput,
  kIllegalScore,
  kInsufficientRecords,
  kDuplicateVerdict,
  kTerminalState,
  kUnknownItem,
  kStaleRevision,
  kNoDualVerdicts,
  kQuotaUnmet,
  kInvalidConfig,
  kInvalidArgument,
  kIoError,
};

std::string_view ErrcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, nlohmann::json detail = nullptr)
      : std::runtime_error(std::string(ErrcName(code)) + ": " + message),
        code_(code),
        message_(message),
        detail_(std::move(detail)) {}

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

  // {"error": <code name>, "message": ..., "detail": ...}
  nlohmann::json ToJson() const;

 private:
  Errc code_;
  std::string message_;
  nlohmann::json detail_;
};

}  // namespace medforge
