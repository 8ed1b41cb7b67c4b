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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "audiopedia/adapters.hpp"
#include "audiopedia/question_match.hpp"
#include "audiopedia/random.hpp"
#include "audiopedia/strings.hpp"
#include "test_support.hpp"

namespace audiopedia {
namespace {

using testing::code_of;

TEST(QuestionMatch, TokensMatchPrefixRule) {
  EXPECT_TRUE(tokens_match("serve", "serves"));
  EXPECT_TRUE(tokens_match("established", "establish"));
  EXPECT_TRUE(tokens_match("in", "in"));
  EXPECT_FALSE(tokens_match("in", "into"));
  EXPECT_FALSE(tokens_match("found", "origin"));
}

TEST(QuestionMatch, ScoresAndSequences) {
  const auto s = match_score("What does Subway serve?", "serves", "salad and sandwich");
  EXPECT_EQ(s.relation, 1);
  EXPECT_EQ(s.object, 0);
  EXPECT_LT(match_score("Who founded KFC?", "origin country", "USA"),
            match_score("Who founded KFC?", "founded by", "Harland Sanders"));
  EXPECT_TRUE(contains_token_sequence("How many have origin country United States?", "united states"));
  EXPECT_FALSE(contains_token_sequence("How many are from the States, United?", "United States"));
  EXPECT_FALSE(contains_token_sequence("anything", ""));
}

TEST(BuildEntityIndex, FullEntriesNonZero) {
  const auto kb = testing::toy_kb();
  const auto index = build_entity_index(kb, KnowledgeSource::full());
  ASSERT_EQ(index.entries.size(), 3u);
  for (const auto& e : index.entries) {
    EXPECT_FALSE(e.vector.is_zero());
    EXPECT_EQ(e.knowledge_text, knowledge_view(kb, e.entity, KnowledgeSource::full()));
  }
}

TEST(BuildEntityIndex, NameOnlyTextsAreNames) {
  const auto kb = testing::toy_kb();
  const auto index = build_entity_index(kb, KnowledgeSource::name_only());
  for (const auto& e : index.entries) EXPECT_EQ(e.knowledge_text, kb.name(e.entity));
}

TEST(BuildEntityIndex, Deterministic) {
  const auto kb = testing::business_kb();
  const auto a = build_entity_index(kb, KnowledgeSource::partial(0.4, 8));
  const auto b = build_entity_index(kb, KnowledgeSource::partial(0.4, 8));
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].entity, b.entries[i].entity);
    EXPECT_EQ(a.entries[i].knowledge_text, b.entries[i].knowledge_text);
    EXPECT_EQ(a.entries[i].vector, b.entries[i].vector);
  }
}

TEST(BuildEntityIndex, EmptyKbRejected) {
  const KnowledgeBase empty = KnowledgeBase::Builder{}.build();
  EXPECT_EQ(code_of([&] { build_entity_index(empty, KnowledgeSource::full()); }), ErrorCode::kEmptyKnowledgeBase);
}

TEST(Transcribe, TextProxyAndNoise) {
  TextProxyRecognizer asr;
  const std::string ref = "text-proxy:Subway serves salad and sandwich.";
  EXPECT_EQ(transcribe(ref, asr), "Subway serves salad and sandwich.");
  EXPECT_EQ(transcribe(ref, asr, NoiseSpec{0.0, 3}), "Subway serves salad and sandwich.");
  EXPECT_EQ(transcribe(ref, asr, NoiseSpec{0.5, 3}), transcribe(ref, asr, NoiseSpec{0.5, 3}));
  EXPECT_NE(transcribe(ref, asr, NoiseSpec{1.0, 3}), "Subway serves salad and sandwich.");
  EXPECT_EQ(code_of([&] { transcribe("/tmp/a.wav", asr); }), ErrorCode::kTranscriptionFailed);
}

class EmptyRecognizer final : public SpeechRecognizer {
 public:
  std::string transcribe(const std::string&) const override { return ""; }
};

TEST(Transcribe, EmptyTranscriptLinksByTieRule) {
  const auto index = build_entity_index(testing::toy_kb(), KnowledgeSource::full());
  const auto r = link(transcribe("anything", EmptyRecognizer{}), index);
  EXPECT_EQ(r.chosen, EntityId{0});
  for (const auto& [id, score] : r.scores) EXPECT_EQ(score, 0.0);
}

TEST(NoiseInject, RateZeroIsIdentityRateOneChangesEveryCharacter) {
  const std::string text = "Caf\xc3\xa9 Subway, est. 1965!";
  EXPECT_EQ(noise_inject(text, 0.0, 1), text);
  const auto noisy = noise_inject(text, 1.0, 1);
  EXPECT_EQ(noisy, noise_inject(text, 1.0, 1));
  const auto before = utf8_chars(text);
  const auto after = utf8_chars(noisy);
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_NE(before[i], after[i]) << i;
    ASSERT_EQ(after[i].size(), 1u);
    EXPECT_TRUE(after[i][0] >= 'a' && after[i][0] <= 'z');
  }
  EXPECT_EQ(code_of([] { noise_inject("x", 1.5, 0); }), ErrorCode::kInvalidArgument);
}

TEST(NoiseInject, HammingDistanceMatchesRate) {
  std::string text;
  for (int i = 0; i < 100; ++i) text.push_back(i % 7 == 6 ? ' ' : static_cast<char>('a' + (i * 5) % 26));
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto noisy = noise_inject(text, 0.3, seed);
    ASSERT_EQ(noisy.size(), text.size());
    for (std::size_t i = 0; i < text.size(); ++i) total += noisy[i] != text[i] ? 1 : 0;
  }
  EXPECT_NEAR(total / 1000.0, 30.0, 3.0);
}

TEST(Link, TranscriptPicksBruteForceArgmax) {
  const auto kb = testing::toy_kb();
  const auto index = build_entity_index(kb, KnowledgeSource::full());
  const std::string transcript = "Subway serves salad and sandwich";
  const auto r = link(transcript, index);
  EXPECT_EQ(kb.name(r.chosen), "Subway");
  // Recompute every score directly.
  const auto q = index.encoder->encode_one(transcript);
  double best = -2;
  EntityId argmax{};
  for (const auto& e : index.entries) {
    const double c = cosine(q, e.vector);
    if (c > best) {
      best = c;
      argmax = e.entity;
    }
  }
  EXPECT_EQ(r.chosen, argmax);
  EXPECT_DOUBLE_EQ(r.scores.front().second, best);
  EXPECT_EQ(r.linked_knowledge, knowledge_view(kb, r.chosen, KnowledgeSource::full()));
  EXPECT_EQ(r.scores.size(), 3u);
}

TEST(Link, EmptyTranscriptChoosesLowestId) {
  const auto index = build_entity_index(testing::toy_kb(), KnowledgeSource::full());
  const auto r = link("", index);
  EXPECT_EQ(r.chosen, EntityId{0});
  for (std::size_t i = 0; i < r.scores.size(); ++i) {
    EXPECT_EQ(r.scores[i].second, 0.0);
    EXPECT_EQ(r.scores[i].first, EntityId{static_cast<std::uint32_t>(i)});
  }
}

TEST(Link, ScalingIndexVectorsChangesNothing) {
  const auto kb = testing::business_kb();
  const auto index = build_entity_index(kb, KnowledgeSource::full());
  EntityIndex scaled = index;
  for (auto& e : scaled.entries) e.vector = e.vector.scaled(7.0);
  for (const auto& t : {"Subway serves salad", "Japan bento", "founded 1952", "zzz"}) {
    const auto a = link(t, index);
    const auto b = link(t, scaled);
    EXPECT_EQ(a.chosen, b.chosen);
    ASSERT_EQ(a.scores.size(), b.scores.size());
    for (std::size_t i = 0; i < a.scores.size(); ++i) {
      EXPECT_EQ(a.scores[i].first, b.scores[i].first);
      EXPECT_NEAR(a.scores[i].second, b.scores[i].second, 1e-12);
    }
  }
}

TEST(Link, ScoresSortedWithTieRule) {
  const auto index = build_entity_index(testing::discriminative_kb(), KnowledgeSource::name_only());
  for (const auto& t : {"Burger King", "Palace", "curry corner", ""}) {
    const auto r = link(t, index);
    for (std::size_t i = 1; i < r.scores.size(); ++i) {
      const auto& p = r.scores[i - 1];
      const auto& q = r.scores[i];
      EXPECT_TRUE(p.second > q.second || (p.second == q.second && to_index(p.first) < to_index(q.first)));
    }
  }
}

TEST(LinkMany, MapsAndPermutes) {
  const auto index = build_entity_index(testing::toy_kb(), KnowledgeSource::full());
  const std::vector<std::string> ts{"KFC fried chicken", "Arby's 1964", "Subway salad"};
  const auto rs = link_many(ts, index);
  ASSERT_EQ(rs.size(), 3u);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(rs[i].chosen, link(ts[i], index).chosen);
  const auto reversed = link_many({ts[2], ts[1], ts[0]}, index);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(reversed[i].chosen, rs[2 - i].chosen);
  EXPECT_TRUE(link_many({}, index).empty());
}

TEST(LinkOracle, GoldKnowledge) {
  const auto kb = testing::toy_kb();
  const auto full = link_oracle(EntityId{0}, kb, KnowledgeSource::full());
  EXPECT_EQ(full.chosen, EntityId{0});
  EXPECT_EQ(full.linked_knowledge, "Subway established in 1965. Subway serves salad and sandwich.");
  EXPECT_EQ(link_oracle(EntityId{0}, kb, KnowledgeSource::name_only()).linked_knowledge, "Subway");
  EXPECT_EQ(code_of([&] { link_oracle(EntityId{9}, kb, KnowledgeSource::full()); }), ErrorCode::kUnknownEntity);
}

TEST(Link, SelfRetrievalOnFullKnowledge) {
  const auto kb = testing::business_kb();
  const auto index = build_entity_index(kb, KnowledgeSource::full());
  for (const auto& e : index.entries) EXPECT_EQ(link(e.knowledge_text, index).chosen, e.entity);
}

TEST(Link, CustomEncoderProvider) {
  const auto kb = testing::toy_kb();
  EncoderProvider chars = [](std::span<const std::string>) { return std::make_shared<const CharCountEncoder>(); };
  const auto index = build_entity_index(kb, KnowledgeSource::full(), chars);
  for (const auto& e : index.entries) EXPECT_EQ(link(e.knowledge_text, index).chosen, e.entity);
}

}  // namespace
}  // namespace audiopedia
