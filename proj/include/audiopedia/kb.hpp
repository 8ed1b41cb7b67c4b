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

#ifndef AUDIOPEDIA_KB_HPP_
#define AUDIOPEDIA_KB_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace audiopedia {

// Dense entity identifier, 0..n-1 in first-seen order.
enum class EntityId : std::uint32_t {};

constexpr std::uint32_t to_index(EntityId id) { return static_cast<std::uint32_t>(id); }

struct Triplet {
  std::string subject;
  std::string relation;
  std::string object;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

// One raw input record; `line` is 1-based and only used for diagnostics.
struct TripletRow {
  std::string subject;
  std::string relation;
  std::string object;
  std::size_t line = 0;
};

struct IngestStats {
  std::size_t rows = 0;
  std::size_t triplets = 0;
  std::size_t duplicates = 0;
};

// How much of an entity's knowledge is exposed: its name, a seeded fraction
// of its framed sentences, or all of them.
class KnowledgeSource {
 public:
  enum class Kind { kNameOnly, kPartial, kFull };

  static KnowledgeSource name_only() { return KnowledgeSource(Kind::kNameOnly, 0.0, 0); }
  static KnowledgeSource full() { return KnowledgeSource(Kind::kFull, 1.0, 0); }
  // Throws kInvalidArgument unless 0 < fraction < 1.
  static KnowledgeSource partial(double fraction, std::uint64_t seed);
  // "name" | "full" | "partial=<f>"
  static KnowledgeSource parse(std::string_view text, std::uint64_t seed);

  Kind kind() const { return kind_; }
  double fraction() const { return fraction_; }
  std::uint64_t seed() const { return seed_; }

  // "name", "full", "partial=0.2"
  std::string label() const;

  friend bool operator==(const KnowledgeSource&, const KnowledgeSource&) = default;

 private:
  KnowledgeSource(Kind kind, double fraction, std::uint64_t seed)
      : kind_(kind), fraction_(fraction), seed_(seed) {}

  Kind kind_;
  double fraction_;
  std::uint64_t seed_;
};

// Immutable triplet store grouped by subject entity.
class KnowledgeBase {
 public:
  class Builder {
   public:
    // Returns the id of the entity whose normalized name matches, creating
    // it on first sight.
    EntityId entity(std::string_view name);
    // Adds a triplet under its subject entity. Returns false on a duplicate.
    bool add(const Triplet& triplet);
    KnowledgeBase build() &&;

   private:
    std::vector<std::string> names_;
    std::map<std::string, EntityId, std::less<>> by_key_;
    std::vector<std::vector<Triplet>> triplets_;
  };

  std::size_t entity_count() const { return names_.size(); }
  std::size_t triplet_count() const;
  bool empty() const { return names_.empty(); }

  bool contains(EntityId id) const { return to_index(id) < names_.size(); }
  // Throws kUnknownEntity.
  const std::string& name(EntityId id) const;
  const std::vector<Triplet>& triplets(EntityId id) const;
  std::optional<EntityId> find(std::string_view name) const;

  std::vector<EntityId> ids() const;
  // Distinct relations in first-seen order.
  std::vector<std::string> relations() const;

  const IngestStats& stats() const { return stats_; }

 private:
  friend class Builder;
  friend KnowledgeBase ingest_triplets(const std::vector<TripletRow>& rows);

  std::vector<std::string> names_;
  std::map<std::string, EntityId, std::less<>> by_key_;
  std::vector<std::vector<Triplet>> triplets_;
  IngestStats stats_;
};

// Key used for entity-name uniqueness.
std::string entity_key(std::string_view name);

// Groups rows by subject and drops exact duplicates (first occurrence wins).
// Throws kEmptyInput on zero rows, kMalformedRow(line) on an empty field or
// a field containing a tab or newline.
KnowledgeBase ingest_triplets(const std::vector<TripletRow>& rows);

// Tab-separated `subject\trelation\tobject` rows; `#` comment lines and
// blank lines are skipped; columns past the third are ignored. Lines that
// start with `{` are read as JSON records with subject/relation/object.
std::vector<TripletRow> parse_triplet_rows(std::istream& in);
KnowledgeBase load_knowledge_base(const std::filesystem::path& path);

// Deterministic TSV rendering, entity order then triplet order.
std::string serialize(const KnowledgeBase& kb);

std::string frame_sentence(const Triplet& triplet);
std::vector<std::string> frame_knowledge_sentences(const KnowledgeBase& kb, EntityId entity);
std::string knowledge_view(const KnowledgeBase& kb, EntityId entity, const KnowledgeSource& source);

}  // namespace audiopedia

#endif  // AUDIOPEDIA_KB_HPP_
