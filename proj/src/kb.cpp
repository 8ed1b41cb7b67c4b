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

#include "audiopedia/kb.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "audiopedia/error.hpp"
#include "audiopedia/random.hpp"
#include "audiopedia/strings.hpp"

namespace audiopedia {

namespace {

bool has_separator(std::string_view field) {
  return field.find_first_of("\t\n\r") != std::string_view::npos;
}

}  // namespace

KnowledgeSource KnowledgeSource::partial(double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "partial fraction must lie strictly in (0, 1)");
  }
  return KnowledgeSource(Kind::kPartial, fraction, seed);
}

KnowledgeSource KnowledgeSource::parse(std::string_view text, std::uint64_t seed) {
  if (text == "name") return name_only();
  if (text == "full") return full();
  constexpr std::string_view kPrefix = "partial=";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    const std::string number(text.substr(kPrefix.size()));
    std::size_t used = 0;
    double f = 0.0;
    try {
      f = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size()) {
      throw Error(ErrorCode::kInvalidArgument, "bad partial fraction '" + number + "'");
    }
    return partial(f, seed);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "knowledge source must be name, full or partial=<f>, got '" + std::string(text) + "'");
}

std::string KnowledgeSource::label() const {
  switch (kind_) {
    case Kind::kNameOnly: return "name";
    case Kind::kFull: return "full";
    case Kind::kPartial: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "partial=%g", fraction_);
      return buf;
    }
  }
  return "";
}

std::string entity_key(std::string_view name) { return normalize_text(name); }

EntityId KnowledgeBase::Builder::entity(std::string_view name) {
  std::string key = entity_key(name);
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  const auto id = static_cast<EntityId>(names_.size());
  names_.emplace_back(trim(name));
  triplets_.emplace_back();
  by_key_.emplace(std::move(key), id);
  return id;
}

bool KnowledgeBase::Builder::add(const Triplet& triplet) {
  const EntityId id = entity(triplet.subject);
  Triplet stored{names_[to_index(id)], std::string(trim(triplet.relation)),
                 std::string(trim(triplet.object))};
  auto& list = triplets_[to_index(id)];
  if (std::find(list.begin(), list.end(), stored) != list.end()) return false;
  list.push_back(std::move(stored));
  return true;
}

KnowledgeBase KnowledgeBase::Builder::build() && {
  KnowledgeBase kb;
  kb.names_ = std::move(names_);
  kb.by_key_ = std::move(by_key_);
  kb.triplets_ = std::move(triplets_);
  kb.stats_.triplets = kb.triplet_count();
  return kb;
}

std::size_t KnowledgeBase::triplet_count() const {
  std::size_t n = 0;
  for (const auto& list : triplets_) n += list.size();
  return n;
}

const std::string& KnowledgeBase::name(EntityId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::kUnknownEntity, "entity id " + std::to_string(to_index(id)));
  }
  return names_[to_index(id)];
}

const std::vector<Triplet>& KnowledgeBase::triplets(EntityId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::kUnknownEntity, "entity id " + std::to_string(to_index(id)));
  }
  return triplets_[to_index(id)];
}

std::optional<EntityId> KnowledgeBase::find(std::string_view name) const {
  const auto it = by_key_.find(entity_key(name));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::vector<EntityId> KnowledgeBase::ids() const {
  std::vector<EntityId> out;
  out.reserve(names_.size());
  for (std::uint32_t i = 0; i < names_.size(); ++i) out.push_back(static_cast<EntityId>(i));
  return out;
}

std::vector<std::string> KnowledgeBase::relations() const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& list : triplets_) {
    for (const auto& t : list) {
      if (seen.insert(t.relation).second) out.push_back(t.relation);
    }
  }
  return out;
}

KnowledgeBase ingest_triplets(const std::vector<TripletRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no triplet rows");
  KnowledgeBase::Builder builder;
  std::size_t duplicates = 0;
  for (const auto& row : rows) {
    for (std::string_view field : {std::string_view(row.subject), std::string_view(row.relation),
                                   std::string_view(row.object)}) {
      if (trim(field).empty() || has_separator(field)) {
        throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(row.line),
                    static_cast<std::int64_t>(row.line));
      }
    }
    if (!builder.add(Triplet{row.subject, row.relation, row.object})) ++duplicates;
  }
  KnowledgeBase kb = std::move(builder).build();
  kb.stats_.rows = rows.size();
  kb.stats_.duplicates = duplicates;
  return kb;
}

std::vector<TripletRow> parse_triplet_rows(std::istream& in) {
  std::vector<TripletRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto malformed = [number]() {
      return Error(ErrorCode::kMalformedRow, "line " + std::to_string(number),
                   static_cast<std::int64_t>(number));
    };
    if (body.front() == '{') {
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(body);
      } catch (const nlohmann::json::exception&) {
        throw malformed();
      }
      TripletRow row;
      row.line = number;
      for (auto [key, dest] : {std::pair{"subject", &row.subject}, std::pair{"relation", &row.relation},
                               std::pair{"object", &row.object}}) {
        const auto it = record.find(key);
        if (it == record.end() || !it->is_string()) throw malformed();
        *dest = it->get<std::string>();
      }
      rows.push_back(std::move(row));
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() < 3) throw malformed();
    rows.push_back(TripletRow{fields[0], fields[1], fields[2], number});
  }
  return rows;
}

KnowledgeBase load_knowledge_base(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return ingest_triplets(parse_triplet_rows(in));
}

std::string serialize(const KnowledgeBase& kb) {
  std::string out;
  for (EntityId id : kb.ids()) {
    for (const auto& t : kb.triplets(id)) {
      out += t.subject + '\t' + t.relation + '\t' + t.object + '\n';
    }
  }
  return out;
}

std::string frame_sentence(const Triplet& triplet) {
  return triplet.subject + " " + triplet.relation + " " + triplet.object + ".";
}

std::vector<std::string> frame_knowledge_sentences(const KnowledgeBase& kb, EntityId entity) {
  std::vector<std::string> sentences;
  for (const auto& t : kb.triplets(entity)) sentences.push_back(frame_sentence(t));
  return sentences;
}

std::string knowledge_view(const KnowledgeBase& kb, EntityId entity, const KnowledgeSource& source) {
  switch (source.kind()) {
    case KnowledgeSource::Kind::kNameOnly:
      return kb.name(entity);
    case KnowledgeSource::Kind::kFull:
      return join(frame_knowledge_sentences(kb, entity), " ");
    case KnowledgeSource::Kind::kPartial: {
      const auto sentences = frame_knowledge_sentences(kb, entity);
      const std::size_t m = sentences.size();
      // The epsilon keeps products like 0.2 * 5 from rounding up to 2.
      const auto k = static_cast<std::size_t>(
          std::ceil(source.fraction() * static_cast<double>(m) - 1e-9));
      Rng rng(Rng::derive(source.seed(), to_index(entity)));
      std::vector<std::string> chosen;
      for (std::size_t i : rng.sample_indices(m, k)) chosen.push_back(sentences[i]);
      return join(chosen, " ");
    }
  }
  return {};
}

}  // namespace audiopedia
