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

#include "audiopedia/qa.hpp"

#include <algorithm>
#include <set>

#include "audiopedia/error.hpp"
#include "audiopedia/question_match.hpp"
#include "audiopedia/strings.hpp"

namespace audiopedia {

namespace {

constexpr std::string_view kKnowledgeHeader = "\n\nKnowledge:\n";
constexpr std::string_view kQuestionHeader = "\n\nQuestion: ";

struct Fact {
  std::string relation;
  std::string object;
};

EntityId gold_entity(const KnowledgeBase& kb, const SampleInput& input) {
  const auto id = kb.find(input.gold_entity_name);
  if (!id) throw Error(ErrorCode::kUnknownEntity, input.gold_entity_name);
  return *id;
}

LinkResult link_one(const std::string& transcript, const SampleInput& input, const PipelineContext& ctx) {
  if (ctx.config.linking_mode == LinkingMode::kOracle) {
    LinkResult r = link_oracle(gold_entity(ctx.kb, input), ctx.kb, ctx.config.knowledge_source);
    r.transcript = transcript;
    return r;
  }
  if (ctx.index == nullptr) throw Error(ErrorCode::kInvalidArgument, "predicted linking needs an entity index");
  return link(transcript, *ctx.index);
}

std::string transcript_of(const SampleInput& input, const PipelineContext& ctx) {
  if (ctx.backends.asr == nullptr) throw Error(ErrorCode::kAdapterUnavailable, "no speech recognizer configured");
  return transcribe(input.audio_ref, *ctx.backends.asr, ctx.config.noise);
}

void require_answerer(const PipelineContext& ctx) {
  if (ctx.backends.answerer == nullptr) throw Error(ErrorCode::kAnswererUnavailable, "no answerer configured");
}

AnswerRecord start(const Sample& sample) {
  AnswerRecord r;
  r.sample_id = sample.id;
  r.task = sample.task;
  return r;
}

void finish(AnswerRecord& r, const Sample& sample, const std::vector<std::string>& knowledge,
            std::vector<std::string> audio_refs, const PipelineContext& ctx) {
  r.prompt = build_prompt(sample.question, ctx.config.knowledge_enabled ? knowledge : std::vector<std::string>{},
                          std::move(audio_refs), ctx.config.instruction);
  r.generated_text = ctx.backends.answerer->answer(r.prompt.render(), r.prompt.audio_refs);
}

template <typename Body>
AnswerRecord guarded(const Sample& sample, const PipelineContext& ctx, Body body) {
  require_answerer(ctx);
  AnswerRecord r = start(sample);
  try {
    body(r);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kAnswererUnavailable) throw;
    r.failed = true;
    r.error = e.what();
  }
  return r;
}

// Reads "S r1 o1. S r2 o2." back into facts. The subject ends right before
// the earliest known relation; sentences are split at ". " + subject + " ".
std::vector<Fact> read_facts(const std::string& block, const std::vector<std::string>& relations) {
  std::size_t subject_end = std::string::npos;
  for (std::size_t p = 1; p < block.size() && subject_end == std::string::npos; ++p) {
    if (block[p - 1] != ' ') continue;
    for (const auto& r : relations) {
      if (block.compare(p, r.size(), r) == 0 && p + r.size() < block.size() && block[p + r.size()] == ' ') {
        subject_end = p - 1;
        break;
      }
    }
  }
  if (subject_end == std::string::npos) return {};
  const std::string subject = block.substr(0, subject_end);
  const std::string boundary = ". " + subject + " ";

  std::vector<Fact> facts;
  std::size_t cursor = subject_end + 1;
  while (cursor < block.size()) {
    std::size_t next = block.find(boundary, cursor);
    std::string body = block.substr(cursor, next == std::string::npos ? std::string::npos : next - cursor);
    if (next == std::string::npos && !body.empty() && body.back() == '.') body.pop_back();
    for (const auto& r : relations) {
      if (body.size() > r.size() + 1 && body.compare(0, r.size(), r) == 0 && body[r.size()] == ' ') {
        facts.push_back(Fact{r, body.substr(r.size() + 1)});
        break;
      }
    }
    if (next == std::string::npos) break;
    cursor = next + boundary.size();
  }
  return facts;
}

bool is_yes_no(const std::string& question) {
  static const std::set<std::string, std::less<>> kAux = {"are", "is",  "do",    "does", "did", "were",
                                                          "was", "can", "could", "has",  "have", "will"};
  const auto tokens = tokenize(question);
  return !tokens.empty() && kAux.count(tokens.front()) > 0;
}

const Fact* fact_of(const std::vector<Fact>& facts, const std::string& relation) {
  for (const auto& f : facts) {
    if (f.relation == relation) return &f;
  }
  return nullptr;
}

}  // namespace

std::string Prompt::render() const {
  std::string out = instruction;
  if (!knowledge_block.empty()) {
    out += kKnowledgeHeader;
    out += knowledge_block;
  }
  out += kQuestionHeader;
  out += question;
  out += '\n';
  return out;
}

Prompt build_prompt(const std::string& question, const std::vector<std::string>& knowledge,
                    std::vector<std::string> audio_refs, std::string instruction) {
  if (trim(question).empty()) throw Error(ErrorCode::kInvalidArgument, "prompt question is empty");
  Prompt p;
  p.instruction = std::move(instruction);
  p.question = question;
  p.audio_refs = std::move(audio_refs);
  std::vector<std::string> nonempty;
  for (const auto& k : knowledge) {
    if (!k.empty()) nonempty.push_back(k);
  }
  p.knowledge_block = join(nonempty, "\n\n");
  return p;
}

ParsedPrompt parse_prompt(std::string_view rendered) {
  ParsedPrompt parsed;
  const std::size_t q = rendered.rfind(kQuestionHeader);
  if (q == std::string_view::npos) return parsed;
  std::string_view question = rendered.substr(q + kQuestionHeader.size());
  if (!question.empty() && question.back() == '\n') question.remove_suffix(1);
  parsed.question = std::string(question);
  const std::size_t k = rendered.find(kKnowledgeHeader);
  if (k != std::string_view::npos && k < q) {
    const std::size_t begin = k + kKnowledgeHeader.size();
    const std::string_view block = rendered.substr(begin, q - begin);
    std::size_t start = 0;
    while (start <= block.size()) {
      const std::size_t sep = block.find("\n\n", start);
      const std::string_view part = block.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
      if (!part.empty()) parsed.knowledge.emplace_back(part);
      if (sep == std::string_view::npos) break;
      start = sep + 2;
    }
  }
  return parsed;
}

std::string_view linking_mode_name(LinkingMode mode) {
  return mode == LinkingMode::kOracle ? "oracle" : "predicted";
}

LinkingMode parse_linking_mode(std::string_view name) {
  if (name == "predicted") return LinkingMode::kPredicted;
  if (name == "oracle") return LinkingMode::kOracle;
  throw Error(ErrorCode::kInvalidArgument, "linking mode must be predicted or oracle");
}

std::vector<EntityId> AnswerRecord::chosen_entities() const {
  std::vector<EntityId> out;
  out.reserve(links.size());
  for (const auto& l : links) out.push_back(l.chosen);
  return out;
}

nlohmann::json answer_record_to_json(const AnswerRecord& record, const KnowledgeBase& kb) {
  nlohmann::json chosen = nlohmann::json::array();
  for (EntityId id : record.chosen_entities()) chosen.push_back(kb.name(id));
  nlohmann::json retained = nlohmann::json::array();
  if (record.retrieval) {
    for (std::size_t i : record.retrieval->retained) retained.push_back(i);
  }
  nlohmann::json j{{"sample_id", record.sample_id},
                   {"task", task_name(record.task)},
                   {"generated_text", record.generated_text},
                   {"chosen_entities", std::move(chosen)},
                   {"retained_indices", std::move(retained)},
                   {"prompt_hash", hex64(fnv1a64(record.prompt.render()))}};
  if (record.failed) j["error"] = record.error;
  return j;
}

AnswerRecord answer_s_aqa(const Sample& sample, const PipelineContext& ctx) {
  return guarded(sample, ctx, [&](AnswerRecord& r) {
    if (sample.inputs.empty()) throw Error(ErrorCode::kInvalidArgument, "s-AQA sample without inputs");
    std::vector<std::string> refs;
    for (const auto& in : sample.inputs) {
      r.transcripts.push_back(transcript_of(in, ctx));
      refs.push_back(in.audio_ref);
    }
    r.links.push_back(link_one(join(r.transcripts, " "), sample.inputs.front(), ctx));
    finish(r, sample, {r.links.front().linked_knowledge}, std::move(refs), ctx);
  });
}

AnswerRecord answer_m_aqa(const Sample& sample, const PipelineContext& ctx) {
  return guarded(sample, ctx, [&](AnswerRecord& r) {
    if (sample.inputs.size() != 2) throw Error(ErrorCode::kArityMismatch, "m-AQA sample needs exactly 2 inputs");
    std::vector<std::string> refs;
    std::vector<std::string> knowledge;
    for (const auto& in : sample.inputs) {
      r.transcripts.push_back(transcript_of(in, ctx));
      r.links.push_back(link_one(r.transcripts.back(), in, ctx));
      knowledge.push_back(r.links.back().linked_knowledge);
      refs.push_back(in.audio_ref);
    }
    finish(r, sample, knowledge, std::move(refs), ctx);
  });
}

AnswerRecord answer_r_aqa(const Sample& sample, const PipelineContext& ctx) {
  return guarded(sample, ctx, [&](AnswerRecord& r) {
    for (const auto& in : sample.inputs) r.transcripts.push_back(transcript_of(in, ctx));
    r.retrieval = retrieve(sample.question, r.transcripts, ctx.backends.retrieval_encoder,
                           ctx.config.retrieval_threshold);
    std::vector<std::string> refs;
    std::vector<std::string> knowledge;
    for (std::size_t i : r.retrieval->retained) {
      r.links.push_back(link_one(r.transcripts[i], sample.inputs[i], ctx));
      knowledge.push_back(r.links.back().linked_knowledge);
      refs.push_back(sample.inputs[i].audio_ref);
    }
    finish(r, sample, knowledge, std::move(refs), ctx);
  });
}

AnswerRecord answer_sample(const Sample& sample, const PipelineContext& ctx) {
  switch (sample.task) {
    case TaskKind::kSingle: return answer_s_aqa(sample, ctx);
    case TaskKind::kMulti: return answer_m_aqa(sample, ctx);
    case TaskKind::kRetrieval: return answer_r_aqa(sample, ctx);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown task");
}

MockOracleAnswerer::MockOracleAnswerer(std::vector<std::string> relations, ObjectEquivalence equivalence)
    : relations_(std::move(relations)), equivalence_(std::move(equivalence)) {
  std::stable_sort(relations_.begin(), relations_.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
}

std::string MockOracleAnswerer::answer(const std::string& prompt, std::span<const std::string>) const {
  return answer_parsed(parse_prompt(prompt));
}

std::string MockOracleAnswerer::answer_prompt(const Prompt& prompt) const {
  return answer_parsed(parse_prompt(prompt.render()));
}

std::string MockOracleAnswerer::answer_parsed(const ParsedPrompt& parsed) const {
  std::vector<std::vector<Fact>> blocks;
  for (const auto& k : parsed.knowledge) blocks.push_back(read_facts(k, relations_));

  const Fact* best = nullptr;
  MatchScore best_score;
  for (const auto& facts : blocks) {
    for (const auto& f : facts) {
      const MatchScore s = match_score(parsed.question, f.relation, f.object);
      if (best == nullptr || s > best_score) {
        best = &f;
        best_score = s;
      }
    }
  }
  if (best == nullptr) return std::string(kUnknownAnswer);

  if (normalize_text(parsed.question).rfind("how many", 0) == 0) {
    std::size_t count = 0;
    for (const auto& facts : blocks) {
      const Fact* f = fact_of(facts, best->relation);
      if (f != nullptr && contains_token_sequence(parsed.question, f->object)) ++count;
    }
    return std::to_string(count);
  }
  if (is_yes_no(parsed.question)) {
    std::vector<const Fact*> found;
    for (const auto& facts : blocks) {
      if (const Fact* f = fact_of(facts, best->relation)) found.push_back(f);
    }
    if (found.size() < 2) return std::string(kUnknownAnswer);
    const bool same = std::all_of(found.begin(), found.end(),
                                  [&](const Fact* f) { return equivalence_.equivalent(f->object, found.front()->object); });
    return same ? "Yes" : "No";
  }
  return best->object;
}

}  // namespace audiopedia
