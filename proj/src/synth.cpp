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

#include "audiopedia/synth.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "audiopedia/error.hpp"
#include "audiopedia/question_match.hpp"
#include "audiopedia/random.hpp"
#include "audiopedia/strings.hpp"

namespace audiopedia {

namespace {

using json = nlohmann::json;

// Salts keep the three generators' random streams independent.
constexpr std::uint64_t kSaltSingle = 0x5341514100000001ULL;
constexpr std::uint64_t kSaltMulti = 0x4d41514100000002ULL;
constexpr std::uint64_t kSaltRetrieval = 0x5241514100000003ULL;

bool is_year(std::string_view s) {
  s = trim(s);
  return s.size() == 4 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string make_id(TaskKind task, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", n);
  return std::string(task_name(task)) + "-" + buf;
}

struct Fact {
  EntityId entity;
  const Triplet* triplet;
};

std::size_t relation_count(const std::vector<Triplet>& triplets, std::string_view relation) {
  return static_cast<std::size_t>(std::count_if(triplets.begin(), triplets.end(),
                                                [&](const Triplet& t) { return t.relation == relation; }));
}

// The best-scoring fact of `relation` must beat every fact of any other
// relation, so a relation matcher reading the question lands on it.
bool question_identifies(std::string_view question, std::string_view relation,
                         const std::vector<const std::vector<Triplet>*>& entities) {
  MatchScore target{-1, -1};
  MatchScore other{-1, -1};
  for (const auto* list : entities) {
    for (const auto& t : *list) {
      const MatchScore s = match_score(question, t.relation, t.object);
      MatchScore& slot = (t.relation == relation) ? target : other;
      slot = std::max(slot, s);
    }
  }
  return target > other;
}

// Facts per relation, restricted to entities holding exactly one triplet of
// that relation, in entity order.
std::map<std::string, std::vector<Fact>> unique_facts_by_relation(const KnowledgeBase& kb) {
  std::map<std::string, std::vector<Fact>> out;
  for (EntityId id : kb.ids()) {
    const auto& list = kb.triplets(id);
    for (const auto& t : list) {
      if (relation_count(list, t.relation) == 1) out[t.relation].push_back(Fact{id, &t});
    }
  }
  return out;
}

SampleInput input_for(const Triplet& t) { return SampleInput{frame_sentence(t), "", t.subject, std::nullopt}; }

json triplet_to_json(const Triplet& t) {
  return json{{"subject", t.subject}, {"relation", t.relation}, {"object", t.object}};
}

Triplet triplet_from_json(const json& j) {
  return Triplet{j.at("subject").get<std::string>(), j.at("relation").get<std::string>(),
                 j.at("object").get<std::string>()};
}

}  // namespace

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::kSingle: return "s_aqa";
    case TaskKind::kMulti: return "m_aqa";
    case TaskKind::kRetrieval: return "r_aqa";
  }
  return "";
}

TaskKind parse_task_name(std::string_view name) {
  if (name == "s_aqa" || name == "s") return TaskKind::kSingle;
  if (name == "m_aqa" || name == "m") return TaskKind::kMulti;
  if (name == "r_aqa" || name == "r") return TaskKind::kRetrieval;
  throw Error(ErrorCode::kInvalidArgument, "unknown task '" + std::string(name) + "'");
}

ObjectEquivalence ObjectEquivalence::custom(std::map<std::string, std::string> buckets) {
  std::map<std::string, std::string> normalized;
  for (auto& [k, v] : buckets) normalized.emplace(normalize_text(k), normalize_text(v));
  return ObjectEquivalence(Kind::kCustom, std::move(normalized));
}

ObjectEquivalence ObjectEquivalence::parse(std::string_view name) {
  if (name == "exact-object" || name == "exact") return exact();
  if (name == "decade-bucket" || name == "decade") return decade();
  throw Error(ErrorCode::kInvalidArgument, "unknown equivalence '" + std::string(name) + "'");
}

std::string ObjectEquivalence::name() const {
  switch (kind_) {
    case Kind::kExact: return "exact-object";
    case Kind::kDecade: return "decade-bucket";
    case Kind::kCustom: return "custom";
  }
  return "";
}

std::string ObjectEquivalence::bucket_of(std::string_view object) const {
  std::string key = normalize_text(object);
  switch (kind_) {
    case Kind::kExact:
      return key;
    case Kind::kDecade:
      return is_year(key) ? key.substr(0, 3) + "0s" : key;
    case Kind::kCustom: {
      const auto it = buckets_.find(key);
      return it == buckets_.end() ? key : it->second;
    }
  }
  return key;
}

bool ObjectEquivalence::equivalent(std::string_view a, std::string_view b) const {
  return bucket_of(a) == bucket_of(b);
}

TemplateTable TemplateTable::defaults() {
  TemplateTable t;
  t.set("established in", {"When was {subject} established in?",
                           "Are these restaurants established in the same {bucket}?",
                           "How many of these restaurants were established in {object}?", "year"});
  t.set("serves", {"What does {subject} serve?", "Do these restaurants serve {object}?",
                   "How many of these restaurants serve {object}?", "food"});
  t.set("origin country", {"What is the origin country of {subject}?", "Are these {object_adj} restaurants?",
                           "How many of these restaurants have origin country {object}?", "country"});
  for (auto [country, adj] : {std::pair{"Japan", "Japanese"}, std::pair{"United States", "American"},
                              std::pair{"United Kingdom", "British"}, std::pair{"Canada", "Canadian"},
                              std::pair{"Germany", "German"}, std::pair{"France", "French"},
                              std::pair{"Italy", "Italian"}, std::pair{"Mexico", "Mexican"},
                              std::pair{"China", "Chinese"}, std::pair{"India", "Indian"},
                              std::pair{"Spain", "Spanish"}, std::pair{"South Korea", "Korean"},
                              std::pair{"Australia", "Australian"}, std::pair{"Brazil", "Brazilian"},
                              std::pair{"Philippines", "Filipino"}}) {
    t.set_adjective(country, adj);
  }
  return t;
}

TemplateTable TemplateTable::from_json(const json& j) {
  TemplateTable t;
  try {
    if (const auto it = j.find("relations"); it != j.end()) {
      for (const auto& [relation, entry] : it->items()) {
        RelationTemplates r;
        r.single = entry.value("single", "");
        r.pair = entry.value("pair", "");
        r.count = entry.value("count", "");
        r.unit = entry.value("unit", "value");
        t.set(relation, std::move(r));
      }
    }
    if (const auto it = j.find("adjectives"); it != j.end()) {
      for (const auto& [object, adj] : it->items()) t.set_adjective(object, adj.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad template table: ") + e.what());
  }
  return t;
}

TemplateTable TemplateTable::load(const std::filesystem::path& path) {
  try {
    return from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, path.string() + ": " + e.what());
  }
}

void TemplateTable::merge(const TemplateTable& other) {
  for (const auto& [k, v] : other.relations_) relations_[k] = v;
  for (const auto& [k, v] : other.adjectives_) adjectives_[k] = v;
}

void TemplateTable::set(const std::string& relation, RelationTemplates templates) {
  relations_[relation] = std::move(templates);
}

void TemplateTable::set_adjective(const std::string& object, const std::string& adjective) {
  adjectives_[normalize_text(object)] = adjective;
}

const RelationTemplates* TemplateTable::find(std::string_view relation) const {
  const auto it = relations_.find(relation);
  return it == relations_.end() ? nullptr : &it->second;
}

std::string TemplateTable::adjective(std::string_view object) const {
  const auto it = adjectives_.find(normalize_text(object));
  return it == adjectives_.end() ? std::string(object) : it->second;
}

std::string render_question(const TemplateTable& table, const Triplet& fact, TaskKind task,
                            const ObjectEquivalence& equivalence) {
  const RelationTemplates* entry = table.find(fact.relation);
  if (entry == nullptr) throw Error(ErrorCode::kMissingTemplate, fact.relation);
  const std::string& pattern = task == TaskKind::kSingle  ? entry->single
                               : task == TaskKind::kMulti ? entry->pair
                                                          : entry->count;
  if (pattern.empty()) {
    throw Error(ErrorCode::kMissingTemplate, fact.relation + " (" + std::string(task_name(task)) + ")");
  }
  std::string bucket = entry->unit;
  if (equivalence.kind() == ObjectEquivalence::Kind::kDecade) bucket = "decade";
  if (equivalence.kind() == ObjectEquivalence::Kind::kCustom) bucket = "category";

  std::string out;
  std::size_t i = 0;
  while (i < pattern.size()) {
    const std::size_t open = pattern.find('{', i);
    if (open == std::string::npos) break;
    const std::size_t close = pattern.find('}', open);
    if (close == std::string::npos) break;
    out.append(pattern, i, open - i);
    const std::string_view slot(pattern.data() + open + 1, close - open - 1);
    if (slot == "subject") {
      out += fact.subject;
    } else if (slot == "relation") {
      out += fact.relation;
    } else if (slot == "object") {
      out += fact.object;
    } else if (slot == "object_adj") {
      out += table.adjective(fact.object);
    } else if (slot == "bucket") {
      out += bucket;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown template slot {" + std::string(slot) + "}");
    }
    i = close + 1;
  }
  out.append(pattern, i, std::string::npos);
  return out;
}

std::vector<Sample> gen_s_aqa(const KnowledgeBase& kb, const SynthConfig& config) {
  Rng rng(Rng::derive(config.seed, kSaltSingle));
  std::vector<Sample> samples;
  for (EntityId id : kb.ids()) {
    const auto& triplets = kb.triplets(id);
    if (triplets.size() < 2) continue;
    for (std::size_t ex = 0; ex < triplets.size(); ++ex) {
      const Triplet& excluded = triplets[ex];
      const RelationTemplates* entry = config.templates.find(excluded.relation);
      if (entry == nullptr || entry->single.empty()) continue;
      if (relation_count(triplets, excluded.relation) != 1) continue;
      std::string question = render_question(config.templates, excluded, TaskKind::kSingle);
      if (contains(normalize_text(question), normalize_text(excluded.object))) continue;
      if (!question_identifies(question, excluded.relation, {&triplets})) continue;

      const std::string excluded_sentence = frame_sentence(excluded);
      std::vector<const Triplet*> rest;
      for (std::size_t k = 0; k < triplets.size(); ++k) {
        if (k != ex && !contains(frame_sentence(triplets[k]), excluded_sentence)) rest.push_back(&triplets[k]);
      }
      if (rest.empty()) continue;

      Sample s;
      s.task = TaskKind::kSingle;
      s.question = std::move(question);
      s.answer = excluded.object;
      s.excluded_triplet = excluded;
      for (std::size_t k : rng.sample_indices(rest.size(), config.max_input_sentences)) {
        s.inputs.push_back(input_for(*rest[k]));
        s.source_triplets.push_back(*rest[k]);
      }
      samples.push_back(std::move(s));
    }
  }
  if (samples.empty()) throw Error(ErrorCode::kNoEligibleEntity, "no entity yields an s-AQA sample");
  if (config.s_aqa_samples > 0 && samples.size() > config.s_aqa_samples) {
    std::vector<Sample> kept;
    for (std::size_t k : rng.sample_indices(samples.size(), config.s_aqa_samples)) {
      kept.push_back(std::move(samples[k]));
    }
    samples = std::move(kept);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].id = make_id(TaskKind::kSingle, i);
  return samples;
}

std::vector<Sample> gen_m_aqa(const KnowledgeBase& kb, const SynthConfig& config) {
  Rng rng(Rng::derive(config.seed, kSaltMulti));
  struct Pair {
    Fact a, b;
  };
  std::vector<Pair> yes, no;
  for (const auto& [relation, facts] : unique_facts_by_relation(kb)) {
    const RelationTemplates* entry = config.templates.find(relation);
    if (entry == nullptr || entry->pair.empty()) continue;
    for (std::size_t i = 0; i < facts.size(); ++i) {
      for (std::size_t j = i + 1; j < facts.size(); ++j) {
        const bool same = config.yes_equivalence.equivalent(facts[i].triplet->object, facts[j].triplet->object);
        (same ? yes : no).push_back(Pair{facts[i], facts[j]});
      }
    }
  }
  if (yes.empty() && no.empty()) throw Error(ErrorCode::kNoEligiblePair, "no two entities share a relation");
  rng.shuffle(yes);
  rng.shuffle(no);

  // Tries the pair in a random order, then the other order; returns false
  // when neither question points unambiguously at the shared relation.
  auto realize = [&](Pair p, const std::string& label, Sample& out) {
    if (rng.below(2) == 1) std::swap(p.a, p.b);
    for (int attempt = 0; attempt < 2; ++attempt) {
      const Triplet& first = *p.a.triplet;
      std::string question = render_question(config.templates, first, TaskKind::kMulti, config.yes_equivalence);
      if (question_identifies(question, first.relation, {&kb.triplets(p.a.entity), &kb.triplets(p.b.entity)})) {
        out = Sample{};
        out.task = TaskKind::kMulti;
        out.question = std::move(question);
        out.answer = label;
        out.inputs = {input_for(*p.a.triplet), input_for(*p.b.triplet)};
        out.source_triplets = {*p.a.triplet, *p.b.triplet};
        return true;
      }
      std::swap(p.a, p.b);
    }
    return false;
  };
  auto take = [&](const std::vector<Pair>& pool, const std::string& label, std::size_t quota) {
    std::vector<Sample> out;
    for (const auto& p : pool) {
      if (out.size() >= quota) break;
      Sample s;
      if (realize(p, label, s)) out.push_back(std::move(s));
    }
    return out;
  };

  const std::size_t target = config.m_aqa_samples;
  auto yes_samples = take(yes, "Yes", target - target / 2);
  auto no_samples = take(no, "No", target / 2);
  if (!yes_samples.empty() && !no_samples.empty()) {
    if (yes_samples.size() > no_samples.size() + 1) yes_samples.resize(no_samples.size() + 1);
    if (no_samples.size() > yes_samples.size() + 1) no_samples.resize(yes_samples.size() + 1);
  }
  std::vector<Sample> samples = std::move(yes_samples);
  for (auto& s : no_samples) samples.push_back(std::move(s));
  if (samples.empty()) throw Error(ErrorCode::kNoEligiblePair, "no pair yields an answerable question");
  rng.shuffle(samples);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].id = make_id(TaskKind::kMulti, i);
  return samples;
}

std::vector<Sample> gen_r_aqa(const KnowledgeBase& kb, const SynthConfig& config) {
  const IntRange rel = config.relevant_per_question;
  const IntRange irr = config.irrelevant_per_question;
  if (rel.lo < 1 || rel.hi < rel.lo || irr.lo < 1 || irr.hi < irr.lo) {
    throw Error(ErrorCode::kInvalidArgument, "relevant/irrelevant ranges must be non-empty and positive");
  }
  Rng rng(Rng::derive(config.seed, kSaltRetrieval));
  const auto by_relation = unique_facts_by_relation(kb);

  std::vector<Fact> anchors;
  for (const auto& [relation, facts] : by_relation) {
    const RelationTemplates* entry = config.templates.find(relation);
    if (entry == nullptr || entry->count.empty()) continue;
    anchors.insert(anchors.end(), facts.begin(), facts.end());
  }
  if (anchors.empty()) throw Error(ErrorCode::kNoEligibleEntity, "no relation has a count template");
  rng.shuffle(anchors);

  std::vector<Sample> samples;
  bool short_of_distractors = false;
  const std::size_t max_attempts = config.r_aqa_samples * 20 + anchors.size();
  for (std::size_t attempt = 0; attempt < max_attempts && samples.size() < config.r_aqa_samples; ++attempt) {
    const Fact& anchor = anchors[attempt % anchors.size()];
    const std::string& relation = anchor.triplet->relation;
    const std::string& target = anchor.triplet->object;
    const auto& peers = by_relation.at(relation);

    // Relevant facts: the anchor plus distinct entities sharing the relation.
    std::vector<const Fact*> others;
    for (const auto& f : peers) {
      if (f.entity != anchor.entity) others.push_back(&f);
    }
    const auto wanted = static_cast<std::size_t>(rng.between(rel.lo, rel.hi));
    std::vector<const Fact*> relevant{&anchor};
    for (std::size_t k : rng.sample_indices(others.size(), wanted - 1)) relevant.push_back(others[k]);

    const std::string question = render_question(config.templates, *anchor.triplet, TaskKind::kRetrieval);
    std::vector<const std::vector<Triplet>*> lists;
    std::set<EntityId> relevant_entities;
    std::set<std::string> relevant_objects;
    bool predicate_readable = true;
    std::size_t satisfied = 0;
    for (const Fact* f : relevant) {
      lists.push_back(&kb.triplets(f->entity));
      relevant_entities.insert(f->entity);
      relevant_objects.insert(normalize_text(f->triplet->object));
      const bool match = normalize_text(f->triplet->object) == normalize_text(target);
      if (match) ++satisfied;
      if (contains_token_sequence(question, f->triplet->object) != match) predicate_readable = false;
    }
    if (!predicate_readable || !question_identifies(question, relation, lists)) continue;

    // A distractor's entity must not itself satisfy, or appear to satisfy,
    // the count predicate through some other triplet.
    auto reads_as_match = [&](EntityId id) {
      for (const auto& t : kb.triplets(id)) {
        if (t.relation == relation && contains_token_sequence(question, t.object)) return true;
      }
      return false;
    };
    std::vector<const Triplet*> distractors;
    for (EntityId id : kb.ids()) {
      if (relevant_entities.count(id) > 0 || reads_as_match(id)) continue;
      for (const auto& t : kb.triplets(id)) {
        if (t.relation != relation && relevant_objects.count(normalize_text(t.object)) == 0) {
          distractors.push_back(&t);
        }
      }
    }
    if (distractors.size() < static_cast<std::size_t>(irr.lo)) {
      short_of_distractors = true;
      continue;
    }
    const auto n_irrelevant = static_cast<std::size_t>(rng.between(irr.lo, irr.hi));

    struct Item {
      const Triplet* triplet;
      bool relevant;
    };
    std::vector<Item> pool;
    for (const Fact* f : relevant) pool.push_back({f->triplet, true});
    for (std::size_t k : rng.sample_indices(distractors.size(), n_irrelevant)) pool.push_back({distractors[k], false});
    rng.shuffle(pool);

    Sample s;
    s.task = TaskKind::kRetrieval;
    s.question = question;
    s.answer = std::to_string(satisfied);
    s.predicate = CountPredicate{relation, target};
    for (const auto& item : pool) {
      SampleInput in = input_for(*item.triplet);
      in.relevant = item.relevant;
      s.inputs.push_back(std::move(in));
      s.source_triplets.push_back(*item.triplet);
    }
    samples.push_back(std::move(s));
  }
  if (samples.empty()) {
    throw Error(short_of_distractors ? ErrorCode::kInsufficientDistractors : ErrorCode::kNoEligibleEntity,
                "no r-AQA sample could be drawn");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].id = make_id(TaskKind::kRetrieval, i);
  return samples;
}

json DatasetManifest::to_json() const {
  json j{{"task", task_name(task)},
         {"file", file},
         {"samples", samples},
         {"answer_type", answer_type},
         {"unique_answers", unique_answers}};
  if (avg_relevant_per_question) j["avg_relevant_per_question"] = *avg_relevant_per_question;
  if (avg_irrelevant_per_question) j["avg_irrelevant_per_question"] = *avg_irrelevant_per_question;
  return j;
}

DatasetManifest describe_dataset(std::span<const Sample> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "no samples");
  DatasetManifest m;
  m.task = samples.front().task;
  m.samples = samples.size();
  m.answer_type = m.task == TaskKind::kSingle ? "open-ended" : m.task == TaskKind::kMulti ? "binary" : "counts";
  std::set<std::string> answers;
  double relevant = 0.0, irrelevant = 0.0;
  for (const auto& s : samples) {
    if (s.task != m.task) throw Error(ErrorCode::kInvalidArgument, "dataset mixes tasks");
    answers.insert(s.answer);
    for (const auto& in : s.inputs) {
      if (in.relevant.has_value()) (*in.relevant ? relevant : irrelevant) += 1.0;
    }
  }
  m.unique_answers = answers.size();
  if (m.task == TaskKind::kRetrieval) {
    m.avg_relevant_per_question = relevant / static_cast<double>(samples.size());
    m.avg_irrelevant_per_question = irrelevant / static_cast<double>(samples.size());
  }
  return m;
}

json sample_to_json(const Sample& sample) {
  json inputs = json::array();
  for (const auto& in : sample.inputs) {
    json item{{"sentence", in.sentence}, {"audio_ref", in.audio_ref}, {"gold_entity_name", in.gold_entity_name}};
    if (in.relevant.has_value()) item["relevant"] = *in.relevant;
    inputs.push_back(std::move(item));
  }
  json sources = json::array();
  for (const auto& t : sample.source_triplets) sources.push_back(triplet_to_json(t));
  json meta{{"source_triplets", std::move(sources)}};
  if (sample.excluded_triplet) meta["excluded_triplet"] = triplet_to_json(*sample.excluded_triplet);
  if (sample.predicate) {
    meta["predicate"] = json{{"relation", sample.predicate->relation}, {"object", sample.predicate->object}};
  }
  return json{{"id", sample.id},         {"task", task_name(sample.task)}, {"question", sample.question},
              {"answer", sample.answer}, {"inputs", std::move(inputs)},   {"meta", std::move(meta)}};
}

Sample sample_from_json(const json& j) {
  Sample s;
  s.id = j.at("id").get<std::string>();
  s.task = parse_task_name(j.at("task").get<std::string>());
  s.question = j.at("question").get<std::string>();
  s.answer = j.at("answer").get<std::string>();
  for (const auto& item : j.at("inputs")) {
    SampleInput in;
    in.sentence = item.at("sentence").get<std::string>();
    in.audio_ref = item.value("audio_ref", "");
    in.gold_entity_name = item.at("gold_entity_name").get<std::string>();
    if (const auto it = item.find("relevant"); it != item.end()) in.relevant = it->get<bool>();
    s.inputs.push_back(std::move(in));
  }
  const json& meta = j.at("meta");
  for (const auto& t : meta.at("source_triplets")) s.source_triplets.push_back(triplet_from_json(t));
  if (const auto it = meta.find("excluded_triplet"); it != meta.end()) s.excluded_triplet = triplet_from_json(*it);
  if (const auto it = meta.find("predicate"); it != meta.end()) {
    s.predicate = CountPredicate{it->at("relation").get<std::string>(), it->at("object").get<std::string>()};
  }
  return s;
}

DatasetManifest emit_dataset(std::span<const Sample> samples, const std::filesystem::path& out_path) {
  DatasetManifest manifest = describe_dataset(samples);
  manifest.file = out_path.filename().string();
  std::string body;
  for (const auto& s : samples) body += sample_to_json(s).dump() + '\n';
  write_file_atomic(out_path, body);
  return manifest;
}

std::vector<Sample> load_dataset(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<Sample> samples;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    try {
      samples.push_back(sample_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedRow, path.string() + " line " + std::to_string(number) + ": " + e.what(),
                  static_cast<std::int64_t>(number));
    }
  }
  return samples;
}

AudioSynthReport synth_audio(std::vector<Sample>& samples, const SpeechSynthesizer* tts, bool text_proxy) {
  if (tts == nullptr && !text_proxy) {
    throw Error(ErrorCode::kAdapterUnavailable, "no TTS adapter configured and text-proxy mode is off");
  }
  AudioSynthReport report;
  for (auto& s : samples) {
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
      auto& in = s.inputs[i];
      if (tts == nullptr) {
        in.audio_ref = std::string(kTextProxyPrefix) + in.sentence;
        ++report.synthesized;
        continue;
      }
      try {
        in.audio_ref = tts->synthesize(in.sentence);
        ++report.synthesized;
      } catch (const Error& e) {
        in.audio_ref.clear();
        report.failures.push_back(AudioFailure{s.id, i, e.what()});
      }
    }
  }
  return report;
}

}  // namespace audiopedia
