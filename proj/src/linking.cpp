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

#include "audiopedia/linking.hpp"

#include <algorithm>

#include "audiopedia/error.hpp"
#include "audiopedia/random.hpp"
#include "audiopedia/strings.hpp"

namespace audiopedia {

const IndexEntry* EntityIndex::find(EntityId id) const {
  for (const auto& e : entries) {
    if (e.entity == id) return &e;
  }
  return nullptr;
}

EntityIndex build_entity_index(const KnowledgeBase& kb, const KnowledgeSource& source,
                               const EncoderProvider& provider) {
  if (kb.empty()) throw Error(ErrorCode::kEmptyKnowledgeBase, "cannot index an empty knowledge base");
  EntityIndex index;
  index.source = source;
  std::vector<std::string> texts;
  for (EntityId id : kb.ids()) texts.push_back(knowledge_view(kb, id, source));
  index.encoder = provider(texts);
  auto vectors = index.encoder->encode_batch(texts);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    index.entries.push_back(IndexEntry{static_cast<EntityId>(i), std::move(texts[i]), std::move(vectors[i])});
  }
  return index;
}

std::string noise_inject(std::string_view text, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "noise rate must be in [0, 1]");
  if (rate == 0.0) return std::string(text);
  Rng rng(seed);
  std::string out;
  out.reserve(text.size());
  for (std::string_view ch : utf8_chars(text)) {
    if (rng.unit() >= rate) {
      out.append(ch);
      continue;
    }
    // Lowercase originals draw from the other 25 letters so a substitution
    // always changes the character.
    const char original = ch.size() == 1 ? ch[0] : '\0';
    const bool lower = original >= 'a' && original <= 'z';
    char letter = static_cast<char>('a' + rng.below(lower ? 25 : 26));
    if (lower && letter >= original) ++letter;
    out.push_back(letter);
  }
  return out;
}

std::string transcribe(const std::string& audio_ref, const SpeechRecognizer& asr, const NoiseSpec& noise) {
  std::string text = asr.transcribe(audio_ref);
  if (noise.rate > 0.0) text = noise_inject(text, noise.rate, Rng::derive(noise.seed, fnv1a64(audio_ref)));
  return text;
}

LinkResult link(const std::string& transcript, const EntityIndex& index) {
  if (index.entries.empty()) throw Error(ErrorCode::kEmptyKnowledgeBase, "empty entity index");
  const SparseVector query = index.encoder->encode_one(transcript);
  LinkResult result;
  result.transcript = transcript;
  result.scores.reserve(index.entries.size());
  for (const auto& e : index.entries) result.scores.emplace_back(e.entity, cosine(query, e.vector));
  std::sort(result.scores.begin(), result.scores.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return to_index(a.first) < to_index(b.first);
  });
  result.chosen = result.scores.front().first;
  result.linked_knowledge = index.find(result.chosen)->knowledge_text;
  return result;
}

std::vector<LinkResult> link_many(const std::vector<std::string>& transcripts, const EntityIndex& index) {
  std::vector<LinkResult> out;
  out.reserve(transcripts.size());
  for (const auto& t : transcripts) out.push_back(link(t, index));
  return out;
}

LinkResult link_oracle(EntityId gold, const KnowledgeBase& kb, const KnowledgeSource& source) {
  LinkResult result;
  result.chosen = gold;
  result.linked_knowledge = knowledge_view(kb, gold, source);
  result.scores = {{gold, 1.0}};
  return result;
}

}  // namespace audiopedia
