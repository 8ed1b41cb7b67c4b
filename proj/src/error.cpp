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

#include "audiopedia/error.hpp"

namespace audiopedia {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kUnknownEntity: return "UnknownEntity";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kMissingTemplate: return "MissingTemplate";
    case ErrorCode::kNoEligibleEntity: return "NoEligibleEntity";
    case ErrorCode::kNoEligiblePair: return "NoEligiblePair";
    case ErrorCode::kInsufficientDistractors: return "InsufficientDistractors";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kAdapterUnavailable: return "AdapterUnavailable";
    case ErrorCode::kTranscriptionFailed: return "TranscriptionFailed";
    case ErrorCode::kEmptyKnowledgeBase: return "EmptyKnowledgeBase";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kAnswererUnavailable: return "AnswererUnavailable";
    case ErrorCode::kEmptyGold: return "EmptyGold";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kIndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

}  // namespace audiopedia
