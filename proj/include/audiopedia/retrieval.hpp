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

#ifndef AUDIOPEDIA_RETRIEVAL_HPP_
#define AUDIOPEDIA_RETRIEVAL_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "audiopedia/text_encoding.hpp"

namespace audiopedia {

struct RetrievalResult {
  std::vector<std::size_t> retained;  // pool order
  std::vector<double> scores;         // one per pool item
  double threshold = 0.0;
};

// Keeps the pool items whose cosine with the question is strictly greater
// than `threshold`. Throws kEmptyPool, or kInvalidArgument for a threshold
// outside [-1, 1].
RetrievalResult retrieve(const std::string& question, const std::vector<std::string>& transcripts,
                         const TextEncoder& encoder, double threshold);

// Same, with an encoder fitted on the pool transcripts plus the question.
RetrievalResult retrieve(const std::string& question, const std::vector<std::string>& transcripts,
                         const EncoderProvider& provider, double threshold);

std::shared_ptr<const TextEncoder> fit_retrieval_encoder(const std::string& question,
                                                         const std::vector<std::string>& transcripts,
                                                         const EncoderProvider& provider);

struct RetrievalCase {
  std::string question;
  std::vector<std::string> transcripts;
  std::vector<std::size_t> gold_relevant;
};

// {0.00, 0.05, ..., 0.95}
std::vector<double> default_threshold_grid();

// Grid value with the highest mean F1 over the cases; ties go to the
// smallest threshold. Throws kEmptyGrid, or kEmptyInput with no cases.
double calibrate_threshold(std::span<const RetrievalCase> dev, const EncoderProvider& provider,
                           std::span<const double> grid);

}  // namespace audiopedia

#endif  // AUDIOPEDIA_RETRIEVAL_HPP_
