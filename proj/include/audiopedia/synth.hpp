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

#ifndef AUDIOPEDIA_SYNTH_HPP_
#define AUDIOPEDIA_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "audiopedia/backends.hpp"
#include "audiopedia/kb.hpp"

namespace audiopedia {

enum class TaskKind { kSingle, kMulti, kRetrieval };

// "s_aqa", "m_aqa", "r_aqa"
std::string_view task_name(TaskKind task);
TaskKind parse_task_name(std::string_view name);

struct SampleInput {
  std::string sentence;
  std::string audio_ref;
  std::string gold_entity_name;
  std::optional<bool> relevant;  // r-AQA pools only

  friend bool operator==(const SampleInput&, const SampleInput&) = default;
};

// The r-AQA question asks how many pool items have `relation` = `object`.
struct CountPredicate {
  std::string relation;
  std::string object;

  friend bool operator==(const CountPredicate&, const CountPredicate&) = default;
};

// One benchmark item of any of the three tasks.
//   s-AQA: every input shares the gold entity; excluded_triplet is set and
//          answer == excluded_triplet->object.
//   m-AQA: exactly two inputs with distinct gold entities; answer Yes/No.
//   r-AQA: a pool with relevance flags; answer is a decimal count.
// source_triplets is parallel to inputs.
struct Sample {
  std::string id;
  TaskKind task = TaskKind::kSingle;
  std::string question;
  std::string answer;
  std::vector<SampleInput> inputs;
  std::optional<Triplet> excluded_triplet;
  std::vector<Triplet> source_triplets;
  std::optional<CountPredicate> predicate;

  friend bool operator==(const Sample&, const Sample&) = default;
};

// When two objects count as "the same" for a Yes answer.
class ObjectEquivalence {
 public:
  enum class Kind { kExact, kDecade, kCustom };

  static ObjectEquivalence exact() { return ObjectEquivalence(Kind::kExact, {}); }
  // Four-digit years compare by decade; anything else compares exactly.
  static ObjectEquivalence decade() { return ObjectEquivalence(Kind::kDecade, {}); }
  // Objects mapped to the same bucket label are equivalent; unmapped objects
  // are their own bucket. Keys are matched after normalization.
  static ObjectEquivalence custom(std::map<std::string, std::string> buckets);
  // "exact-object" | "decade-bucket"
  static ObjectEquivalence parse(std::string_view name);

  Kind kind() const { return kind_; }
  std::string name() const;
  bool equivalent(std::string_view a, std::string_view b) const;
  const std::map<std::string, std::string>& buckets() const { return buckets_; }

 private:
  ObjectEquivalence(Kind kind, std::map<std::string, std::string> buckets)
      : kind_(kind), buckets_(std::move(buckets)) {}

  std::string bucket_of(std::string_view object) const;

  Kind kind_;
  std::map<std::string, std::string> buckets_;
};

// Question templates for one relation. Slots: {subject}, {relation},
// {object}, {object_adj} (adjective table lookup, falls back to the object),
// {bucket} ("decade" / "category" under those equivalences, `unit` under
// exact-object).
struct RelationTemplates {
  std::string single;
  std::string pair;
  std::string count;
  std::string unit = "value";
};

class TemplateTable {
 public:
  // Templates for the relations used in the worked examples:
  // "established in", "serves", "origin country".
  static TemplateTable defaults();
  // {"relations": {rel: {"single","pair","count","unit"}}, "adjectives": {...}}
  static TemplateTable from_json(const nlohmann::json& j);
  static TemplateTable load(const std::filesystem::path& path);

  // Entries in `other` override ours.
  void merge(const TemplateTable& other);

  void set(const std::string& relation, RelationTemplates templates);
  void set_adjective(const std::string& object, const std::string& adjective);
  const RelationTemplates* find(std::string_view relation) const;
  std::string adjective(std::string_view object) const;

 private:
  std::map<std::string, RelationTemplates, std::less<>> relations_;
  std::map<std::string, std::string, std::less<>> adjectives_;
};

// Fills the template for `task` from `fact` (for m-AQA, the first input's
// triplet). Throws kMissingTemplate when the relation or the task's template
// is absent.
std::string render_question(const TemplateTable& table, const Triplet& fact, TaskKind task,
                            const ObjectEquivalence& equivalence = ObjectEquivalence::exact());

struct IntRange {
  int lo = 1;
  int hi = 1;
};

struct SynthConfig {
  std::uint64_t seed = 0;
  std::size_t max_input_sentences = 3;
  ObjectEquivalence yes_equivalence = ObjectEquivalence::exact();
  IntRange relevant_per_question{1, 3};
  IntRange irrelevant_per_question{6, 11};
  std::size_t s_aqa_samples = 0;  // 0 keeps every eligible sample
  std::size_t m_aqa_samples = 500;
  std::size_t r_aqa_samples = 115;
  TemplateTable templates = TemplateTable::defaults();
};

std::vector<Sample> gen_s_aqa(const KnowledgeBase& kb, const SynthConfig& config);
std::vector<Sample> gen_m_aqa(const KnowledgeBase& kb, const SynthConfig& config);
std::vector<Sample> gen_r_aqa(const KnowledgeBase& kb, const SynthConfig& config);

struct DatasetManifest {
  TaskKind task = TaskKind::kSingle;
  std::string file;
  std::size_t samples = 0;
  std::string answer_type;  // "open-ended" | "binary" | "counts"
  std::size_t unique_answers = 0;
  std::optional<double> avg_relevant_per_question;
  std::optional<double> avg_irrelevant_per_question;

  nlohmann::json to_json() const;
};

DatasetManifest describe_dataset(std::span<const Sample> samples);

nlohmann::json sample_to_json(const Sample& sample);
Sample sample_from_json(const nlohmann::json& j);

// Writes one JSON record per line. Throws kEmptyInput on no samples and
// kIoFailure on write errors.
DatasetManifest emit_dataset(std::span<const Sample> samples, const std::filesystem::path& out_path);
std::vector<Sample> load_dataset(const std::filesystem::path& path);

inline constexpr std::string_view kTextProxyPrefix = "text-proxy:";

struct AudioFailure {
  std::string sample_id;
  std::size_t input_index = 0;
  std::string error;
};

struct AudioSynthReport {
  std::size_t synthesized = 0;
  std::vector<AudioFailure> failures;
};

// Fills audio_ref for every input. With no synthesizer and text_proxy set,
// refs become "text-proxy:" + sentence. Failed items keep an empty ref and
// are listed in the report. Throws kAdapterUnavailable when neither mode is
// available.
AudioSynthReport synth_audio(std::vector<Sample>& samples, const SpeechSynthesizer* tts, bool text_proxy);

}  // namespace audiopedia

#endif  // AUDIOPEDIA_SYNTH_HPP_
