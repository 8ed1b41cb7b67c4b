// Copyright 2026 The Audiopedia Toolkit Authors.
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

#ifndef AUDIOPEDIA_ERROR_HPP_
#define AUDIOPEDIA_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace audiopedia {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyInput,
  kMalformedRow,
  kUnknownEntity,
  kEmptyCorpus,
  kMissingTemplate,
  kNoEligibleEntity,
  kNoEligiblePair,
  kInsufficientDistractors,
  kIoFailure,
  kAdapterUnavailable,
  kTranscriptionFailed,
  kEmptyKnowledgeBase,
  kEmptyPool,
  kEmptyGrid,
  kAnswererUnavailable,
  kEmptyGold,
  kArityMismatch,
  kIndexOutOfBounds,
  kTimeout,
  kProtocolError,
  kExhaustedRetries,
  kDimensionMismatch,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the toolkit. `detail` carries the one integer
// some codes need: the 1-based line for kMalformedRow, the HTTP status for
// kProtocolError.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::int64_t detail = 0)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  std::int64_t detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::int64_t detail_;
};

}  // namespace audiopedia

#endif  // AUDIOPEDIA_ERROR_HPP_
