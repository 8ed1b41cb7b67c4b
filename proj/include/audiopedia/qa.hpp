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

#ifndef AUDIOPEDIA_QA_HPP_
#define AUDIOPEDIA_QA_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "audiopedia/backends.hpp"
#include "audiopedia/kb.hpp"
#include "audiopedia/linking.hpp"
#include "audiopedia/retrieval.hpp"
#include "audiopedia/synth.hpp"

namespace audiopedia {

inline constexpr std::string_view kDefaultInstruction =
    "Answer the question using the audio and the provided knowledge.";

// Knowledge-infused instruction prompt. Rendered layout:
//
//   <instruction>
//
//   Knowledge:
//   <knowledge 1>
//
//   <knowledge 2>
//
//   Question: <question>
//
// The Knowledge section is omitted when the block is empty.
struct Prompt {
  std::string instruction{kDefaultInstruction};
  std::string knowledge_block;
  std::string question;
  std::vector<std::string> audio_refs;

  std::string render() const;
};

// Throws kInvalidArgument on an empty question.
Prompt build_prompt(const std::string& question, const std::vector<std::string>& knowledge,
                    std::vector<std::string> audio_refs, std::string instruction = std::string(kDefaultInstruction));

// Inverse of Prompt::render for the knowledge blocks and question.
struct ParsedPrompt {
  std::vector<std::string> knowledge;
  std::string question;
};
ParsedPrompt parse_prompt(std::string_view rendered);

enum class LinkingMode { kPredicted, kOracle };

std::string_view linking_mode_name(LinkingMode mode);
LinkingMode parse_linking_mode(std::string_view name);

struct PipelineConfig {
  bool knowledge_enabled = true;
  KnowledgeSource knowledge_source = KnowledgeSource::full();
  LinkingMode linking_mode = LinkingMode::kPredicted;
  double retrieval_threshold = 0.0;
  std::string instruction{kDefaultInstruction};
  NoiseSpec noise;
};

struct PipelineBackends {
  const SpeechRecognizer* asr = nullptr;
  const Answerer* answerer = nullptr;
  EncoderProvider retrieval_encoder = tfidf_provider();
};

// Everything a pipeline run reads. `index` may be null in oracle mode.
struct PipelineContext {
  const KnowledgeBase& kb;
  const EntityIndex* index = nullptr;
  PipelineConfig config;
  PipelineBackends backends;
};

struct AnswerRecord {
  std::string sample_id;
  TaskKind task = TaskKind::kSingle;
  std::string generated_text;
  Prompt prompt;
  std::vector<std::string> transcripts;
  std::vector<LinkResult> links;
  std::optional<RetrievalResult> retrieval;
  bool failed = false;
  std::string error;

  std::vector<EntityId> chosen_entities() const;
};

// {sample_id, task, generated_text, chosen_entities, retained_indices, prompt_hash}
nlohmann::json answer_record_to_json(const AnswerRecord& record, const KnowledgeBase& kb);

// Each pipeline throws kAnswererUnavailable when no answerer is configured;
// other per-sample failures are recorded in the returned record.
AnswerRecord answer_s_aqa(const Sample& sample, const PipelineContext& ctx);
AnswerRecord answer_m_aqa(const Sample& sample, const PipelineContext& ctx);
AnswerRecord answer_r_aqa(const Sample& sample, const PipelineContext& ctx);
AnswerRecord answer_sample(const Sample& sample, const PipelineContext& ctx);

// Model-free answerer used as the test oracle. It reads the knowledge
// sentences back into (relation, object) facts using its relation
// vocabulary, picks the fact whose relation (then object) tokens best match
// the question (earliest on ties), and answers:
//   - "how many ..." questions: number of knowledge blocks whose fact of
//     that relation has its object spelled out in the question;
//   - yes/no questions: "Yes" iff every block's object of that relation is
//     equivalent under `equivalence`;
//   - anything else: the fact's object.
// With no knowledge, or nothing readable, it answers "unknown".
class MockOracleAnswerer final : public Answerer {
 public:
  MockOracleAnswerer(std::vector<std::string> relations, ObjectEquivalence equivalence);

  std::string answer(const std::string& prompt, std::span<const std::string> audio_refs) const override;
  std::string answer_prompt(const Prompt& prompt) const;

 private:
  std::string answer_parsed(const ParsedPrompt& parsed) const;

  std::vector<std::string> relations_;  // longest first
  ObjectEquivalence equivalence_;
};

inline constexpr std::string_view kUnknownAnswer = "unknown";

}  // namespace audiopedia

#endif  // AUDIOPEDIA_QA_HPP_
