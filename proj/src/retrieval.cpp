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

#include "audiopedia/retrieval.hpp"

#include "audiopedia/error.hpp"
#include "audiopedia/evaluation.hpp"

namespace audiopedia {

namespace {

std::vector<std::size_t> above(const std::vector<double>& scores, double threshold) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > threshold) kept.push_back(i);
  }
  return kept;
}

std::vector<double> score_pool(const std::string& question, const std::vector<std::string>& transcripts,
                               const TextEncoder& encoder) {
  const SparseVector q = encoder.encode_one(question);
  std::vector<double> scores;
  scores.reserve(transcripts.size());
  for (const auto& v : encoder.encode_batch(transcripts)) scores.push_back(cosine(q, v));
  return scores;
}

}  // namespace

RetrievalResult retrieve(const std::string& question, const std::vector<std::string>& transcripts,
                         const TextEncoder& encoder, double threshold) {
  if (transcripts.empty()) throw Error(ErrorCode::kEmptyPool, "retrieval pool is empty");
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in [-1, 1]");
  }
  RetrievalResult result;
  result.threshold = threshold;
  result.scores = score_pool(question, transcripts, encoder);
  result.retained = above(result.scores, threshold);
  return result;
}

std::shared_ptr<const TextEncoder> fit_retrieval_encoder(const std::string& question,
                                                         const std::vector<std::string>& transcripts,
                                                         const EncoderProvider& provider) {
  std::vector<std::string> corpus = transcripts;
  corpus.push_back(question);
  return provider(corpus);
}

RetrievalResult retrieve(const std::string& question, const std::vector<std::string>& transcripts,
                         const EncoderProvider& provider, double threshold) {
  if (transcripts.empty()) throw Error(ErrorCode::kEmptyPool, "retrieval pool is empty");
  return retrieve(question, transcripts, *fit_retrieval_encoder(question, transcripts, provider), threshold);
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(i * 0.05);
  return grid;
}

double calibrate_threshold(std::span<const RetrievalCase> dev, const EncoderProvider& provider,
                           std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::kEmptyGrid, "threshold grid is empty");
  if (dev.empty()) throw Error(ErrorCode::kEmptyInput, "no calibration cases");
  std::vector<std::vector<double>> scores;
  scores.reserve(dev.size());
  for (const auto& c : dev) {
    if (c.transcripts.empty()) throw Error(ErrorCode::kEmptyPool, "calibration case with an empty pool");
    scores.push_back(score_pool(c.question, c.transcripts, *fit_retrieval_encoder(c.question, c.transcripts, provider)));
  }
  double best = grid.front();
  double best_f1 = -1.0;
  for (double t : grid) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dev.size(); ++i) {
      sum += retrieval_f1(above(scores[i], t), dev[i].gold_relevant, dev[i].transcripts.size());
    }
    const double mean = sum / static_cast<double>(dev.size());
    if (mean > best_f1 || (mean == best_f1 && t < best)) {
      best = t;
      best_f1 = mean;
    }
  }
  return best;
}

}  // namespace audiopedia
