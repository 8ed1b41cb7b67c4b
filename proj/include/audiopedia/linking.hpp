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

#ifndef AUDIOPEDIA_LINKING_HPP_
#define AUDIOPEDIA_LINKING_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "audiopedia/backends.hpp"
#include "audiopedia/kb.hpp"
#include "audiopedia/text_encoding.hpp"

namespace audiopedia {

struct IndexEntry {
  EntityId entity;
  std::string knowledge_text;
  SparseVector vector;
};

// Knowledge embeddings for every KB entity under one knowledge source. The
// encoder is fitted on the knowledge texts only.
struct EntityIndex {
  KnowledgeSource source = KnowledgeSource::full();
  std::vector<IndexEntry> entries;
  std::shared_ptr<const TextEncoder> encoder;

  const IndexEntry* find(EntityId id) const;
};

struct LinkResult {
  EntityId chosen{};
  std::string linked_knowledge;
  // Every index entity once, descending score, ties by ascending id.
  std::vector<std::pair<EntityId, double>> scores;
  std::string transcript;
};

// Throws kEmptyKnowledgeBase.
EntityIndex build_entity_index(const KnowledgeBase& kb, const KnowledgeSource& source,
                               const EncoderProvider& provider = tfidf_provider());

// Substitutes a random lowercase letter (never the original character) for
// each UTF-8 character with probability `rate`.
std::string noise_inject(std::string_view text, double rate, std::uint64_t seed);

struct NoiseSpec {
  double rate = 0.0;
  std::uint64_t seed = 0;
};

// Speech recognition for one audio ref, with optional simulated ASR noise.
// The noise seed is derived from `noise.seed` and the ref so repeated refs
// get the same corruption.
std::string transcribe(const std::string& audio_ref, const SpeechRecognizer& asr, const NoiseSpec& noise = {});

LinkResult link(const std::string& transcript, const EntityIndex& index);
std::vector<LinkResult> link_many(const std::vector<std::string>& transcripts, const EntityIndex& index);

// Gold-entity linking: the answering pipeline's ceiling. Throws kUnknownEntity.
LinkResult link_oracle(EntityId gold, const KnowledgeBase& kb, const KnowledgeSource& source);

}  // namespace audiopedia

#endif  // AUDIOPEDIA_LINKING_HPP_
