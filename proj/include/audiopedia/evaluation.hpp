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

#ifndef AUDIOPEDIA_EVALUATION_HPP_
#define AUDIOPEDIA_EVALUATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "audiopedia/kb.hpp"
#include "audiopedia/qa.hpp"
#include "audiopedia/synth.hpp"

namespace audiopedia {

// 1 iff the normalized gold answer is a substring of the normalized
// generated text (case-fold + whitespace collapse). Throws kEmptyGold.
int aqa_accuracy(std::string_view generated, std::string_view gold);

// 1 iff every predicted entity equals its positional gold. Throws
// kArityMismatch.
int ael_accuracy(std::span<const EntityId> predicted, std::span<const EntityId> gold);

// F1 of retained vs gold relevant pool indices. Both empty scores 1; either
// side empty otherwise scores 0. Throws kIndexOutOfBounds for an index at
// or past pool_size.
double retrieval_f1(std::span<const std::size_t> retained, std::span<const std::size_t> gold,
                    std::size_t pool_size);

struct SampleRow {
  std::string sample_id;
  TaskKind task = TaskKind::kSingle;
  int accuracy = 0;
  std::optional<int> ael;           // s-AQA and m-AQA
  std::optional<double> retrieval;  // r-AQA F1
  bool failed = false;
  std::string error;
  std::string generated_text;
};

struct TaskAggregate {
  std::size_t samples = 0;
  double accuracy = 0.0;
  std::optional<double> ael_accuracy;
  std::optional<double> retrieval_f1;
};

struct EvalReport {
  std::string label;
  std::string knowledge_source;
  std::string linking_mode;
  bool knowledge_enabled = true;
  double threshold = 0.0;
  std::vector<SampleRow> rows;
  std::vector<std::pair<TaskKind, TaskAggregate>> tasks;  // task order of first appearance

  const TaskAggregate* aggregate(TaskKind task) const;
  nlohmann::json to_json() const;
  // Reads back what to_json wrote (rows included when present).
  static EvalReport from_json(const nlohmann::json& j);
};

struct EvalOptions {
  std::size_t max_in_flight = 1;
  std::string label;
};

// Runs the matching pipeline for every sample, scores it and aggregates.
// Failed samples score 0 and are flagged; the batch never aborts on them.
EvalReport run_eval(std::span<const Sample> dataset, const PipelineContext& ctx, const EvalOptions& options = {});

// Also returns the raw answer records, in dataset order.
EvalReport run_eval(std::span<const Sample> dataset, const PipelineContext& ctx, const EvalOptions& options,
                    std::vector<AnswerRecord>* records);

// One report per source, rebuilding the entity index for each. With
// include_oracle, a final row uses gold linking with Full knowledge.
std::vector<EvalReport> ablation_suite(std::span<const Sample> dataset, const KnowledgeBase& kb,
                                       std::span<const KnowledgeSource> sources, const PipelineConfig& config,
                                       const PipelineBackends& backends, bool include_oracle = false,
                                       const EncoderProvider& index_encoder = tfidf_provider());

// Plain-text table: one line per report, one column group per task.
std::string render_table(std::span<const EvalReport> reports);

}  // namespace audiopedia

#endif  // AUDIOPEDIA_EVALUATION_HPP_
