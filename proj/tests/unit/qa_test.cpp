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

#include <gtest/gtest.h>

#include "audiopedia/adapters.hpp"
#include "audiopedia/evaluation.hpp"
#include "audiopedia/retrieval.hpp"
#include "test_support.hpp"

namespace audiopedia {
namespace {

using testing::code_of;
using testing::kb_from;

MockOracleAnswerer mock_for(const KnowledgeBase& kb, ObjectEquivalence eq = ObjectEquivalence::exact()) {
  return MockOracleAnswerer(kb.relations(), std::move(eq));
}

std::string ask(const MockOracleAnswerer& m, const std::string& question, const std::vector<std::string>& knowledge) {
  return m.answer_prompt(build_prompt(question, knowledge, {}));
}

TEST(BuildPrompt, RenderedLayout) {
  const auto p = build_prompt("When was Subway established in?", {"Subway serves salad and sandwich.", "KFC serves x."},
                              {"a.wav", "b.wav"});
  EXPECT_EQ(p.render(),
            "Answer the question using the audio and the provided knowledge.\n\n"
            "Knowledge:\nSubway serves salad and sandwich.\n\nKFC serves x.\n\n"
            "Question: When was Subway established in?\n");
  EXPECT_EQ(p.audio_refs, (std::vector<std::string>{"a.wav", "b.wav"}));
  EXPECT_EQ(p.render(), build_prompt("When was Subway established in?",
                                     {"Subway serves salad and sandwich.", "KFC serves x."}, {"a.wav", "b.wav"})
                            .render());
}

TEST(BuildPrompt, KnowledgeOffHasNoHeader) {
  const auto p = build_prompt("Q?", {}, {});
  EXPECT_EQ(p.render().find("Knowledge:"), std::string::npos);
  EXPECT_EQ(build_prompt("Q?", {"", ""}, {}).render(), p.render());
  EXPECT_EQ(code_of([] { build_prompt("  ", {}, {}); }), ErrorCode::kInvalidArgument);
}

TEST(BuildPrompt, OrderPreservedAndParsedBack) {
  const std::vector<std::string> k{"K1 first.", "K2 second."};
  const auto parsed = parse_prompt(build_prompt("Are these?", k, {}).render());
  EXPECT_EQ(parsed.knowledge, k);
  EXPECT_EQ(parsed.question, "Are these?");
  EXPECT_TRUE(parse_prompt(build_prompt("Q?", {}, {}).render()).knowledge.empty());
}

TEST(MockOracle, SingleFactLookup) {
  const auto kb = testing::toy_kb();
  const auto m = mock_for(kb);
  EXPECT_EQ(ask(m, "When was Subway established in?", {"Subway established in 1965."}), "1965");
  EXPECT_EQ(ask(m, "What does Subway serve?", {"Subway established in 1965. Subway serves salad and sandwich."}),
            "salad and sandwich");
  EXPECT_EQ(ask(m, "When was Subway established in?", {}), "unknown");
  EXPECT_EQ(ask(m, "When was Subway established in?", {"Subway"}), "unknown");
}

TEST(MockOracle, OriginCountryPairIsNo) {
  const auto kb = kb_from({{"Hotto Motto", "origin country", "Japan"}, {"Krispy Kreme", "origin country", "United States"}});
  const auto m = mock_for(kb);
  EXPECT_EQ(ask(m, "Are these Japanese restaurants?",
                {"Hotto Motto origin country Japan.", "Krispy Kreme origin country United States."}),
            "No");
  EXPECT_EQ(ask(m, "Are these Japanese restaurants?",
                {"Hotto Motto origin country Japan.", "Mos Burger origin country Japan."}),
            "Yes");
  EXPECT_EQ(ask(m, "Are these Japanese restaurants?", {"Hotto Motto origin country Japan."}), "unknown");
}

TEST(MockOracle, DecadeRuleAndSymmetry) {
  const auto kb = kb_from({{"Subway", "established in", "1965"}, {"Arby's", "established in", "1964"}});
  const auto m = mock_for(kb, ObjectEquivalence::decade());
  const std::string q = "Are these restaurants established in the same decade?";
  EXPECT_EQ(ask(m, q, {"Subway established in 1965.", "Arby's established in 1964."}), "Yes");
  EXPECT_EQ(ask(m, q, {"Arby's established in 1964.", "Subway established in 1965."}), "Yes");
  EXPECT_EQ(ask(mock_for(kb), q, {"Subway established in 1965.", "Arby's established in 1964."}), "No");
}

TEST(MockOracle, CountsBlocksMatchingObject) {
  const auto kb = kb_from({{"A", "origin country", "Japan"}, {"B", "origin country", "Japan"}, {"C", "origin country", "Canada"}});
  const auto m = mock_for(kb);
  EXPECT_EQ(ask(m, "How many of these restaurants have origin country Japan?",
                {"A origin country Japan.", "B origin country Japan.", "C origin country Canada."}),
            "2");
}

TEST(MockOracle, SubjectsContainingRelationWords) {
  const auto kb = kb_from({{"Serves Inn", "serves", "soup"}, {"Serves Inn", "established in", "1901"}});
  const auto m = mock_for(kb);
  EXPECT_EQ(ask(m, "What does Serves Inn serve?", {"Serves Inn serves soup. Serves Inn established in 1901."}), "soup");
}

struct Fixture {
  KnowledgeBase kb = testing::business_kb();
  TextProxyRecognizer asr;
  MockOracleAnswerer answerer{kb.relations(), ObjectEquivalence::exact()};
  SynthConfig synth = [] {
    SynthConfig c;
    c.seed = 13;
    c.templates = TemplateTable::load(testing::data_path("templates.json"));
    return c;
  }();

  std::vector<Sample> proxied(std::vector<Sample> samples) {
    synth_audio(samples, nullptr, true);
    return samples;
  }
  PipelineContext ctx(PipelineConfig config, const EntityIndex* index = nullptr) {
    return PipelineContext{kb, index, std::move(config), PipelineBackends{&asr, &answerer, tfidf_provider()}};
  }
};

PipelineConfig oracle_config() {
  PipelineConfig c;
  c.linking_mode = LinkingMode::kOracle;
  return c;
}

TEST(AnswerSAqa, OracleContainsGold) {
  Fixture f;
  const auto c = f.ctx(oracle_config());
  for (const auto& s : f.proxied(gen_s_aqa(f.kb, f.synth))) {
    const auto r = answer_s_aqa(s, c);
    ASSERT_FALSE(r.failed) << r.error;
    EXPECT_EQ(aqa_accuracy(r.generated_text, s.answer), 1) << s.question << " -> " << r.generated_text;
    ASSERT_EQ(r.links.size(), 1u);
    EXPECT_EQ(f.kb.name(r.links[0].chosen), s.inputs[0].gold_entity_name);
  }
}

TEST(AnswerSAqa, KnowledgeOffPromptIsBare) {
  Fixture f;
  auto config = oracle_config();
  config.knowledge_enabled = false;
  const auto c = f.ctx(config);
  const auto s = f.proxied(gen_s_aqa(f.kb, f.synth)).front();
  const auto r = answer_s_aqa(s, c);
  EXPECT_TRUE(r.prompt.knowledge_block.empty());
  EXPECT_EQ(r.generated_text, "unknown");
}

TEST(AnswerSAqa, PredictedMatchesOracleOnCleanProxy) {
  Fixture f;
  const auto index = build_entity_index(f.kb, KnowledgeSource::full());
  const auto oracle = f.ctx(oracle_config());
  const auto predicted = f.ctx(PipelineConfig{}, &index);
  for (const auto& s : f.proxied(gen_s_aqa(f.kb, f.synth))) {
    EXPECT_EQ(answer_s_aqa(s, predicted).generated_text, answer_s_aqa(s, oracle).generated_text) << s.id;
  }
}

TEST(AnswerSAqa, MissingAnswererThrowsOtherErrorsAreRecorded) {
  Fixture f;
  PipelineContext c{f.kb, nullptr, oracle_config(), PipelineBackends{&f.asr, nullptr, tfidf_provider()}};
  auto s = f.proxied(gen_s_aqa(f.kb, f.synth)).front();
  EXPECT_EQ(code_of([&] { answer_s_aqa(s, c); }), ErrorCode::kAnswererUnavailable);
  s.inputs[0].audio_ref = "/no/such.wav";
  const auto r = answer_s_aqa(s, f.ctx(oracle_config()));
  EXPECT_TRUE(r.failed);
  EXPECT_NE(r.error.find("text-proxy"), std::string::npos);
  const auto p = answer_s_aqa(f.proxied(gen_s_aqa(f.kb, f.synth)).front(), f.ctx(PipelineConfig{}));
  EXPECT_TRUE(p.failed);  // predicted linking without an index
}

TEST(AnswerMAqa, DecadeExampleAndSwap) {
  const auto kb = kb_from({{"Subway", "established in", "1965"}, {"Arby's", "established in", "1964"},
                           {"Subway", "serves", "salad and sandwich"}, {"Arby's", "serves", "roast beef"}});
  SynthConfig synth;
  synth.yes_equivalence = ObjectEquivalence::decade();
  auto samples = gen_m_aqa(kb, synth);
  synth_audio(samples, nullptr, true);
  TextProxyRecognizer asr;
  MockOracleAnswerer answerer(kb.relations(), ObjectEquivalence::decade());
  const PipelineContext c{kb, nullptr, oracle_config(), PipelineBackends{&asr, &answerer, tfidf_provider()}};
  bool saw_decade = false;
  for (auto s : samples) {
    const auto r = answer_m_aqa(s, c);
    EXPECT_EQ(r.generated_text, s.answer) << s.question;
    if (s.question == "Are these restaurants established in the same decade?") {
      saw_decade = true;
      EXPECT_EQ(r.generated_text, "Yes");
    }
    std::swap(s.inputs[0], s.inputs[1]);
    EXPECT_EQ(answer_m_aqa(s, c).generated_text, r.generated_text);
  }
  EXPECT_TRUE(saw_decade);
}

TEST(AnswerMAqa, HottoMottoKrispyKreme) {
  const auto kb = kb_from({{"Hotto Motto", "origin country", "Japan"}, {"Krispy Kreme", "origin country", "United States"}});
  auto samples = gen_m_aqa(kb, SynthConfig{});
  synth_audio(samples, nullptr, true);
  TextProxyRecognizer asr;
  MockOracleAnswerer answerer(kb.relations(), ObjectEquivalence::exact());
  const PipelineContext c{kb, nullptr, oracle_config(), PipelineBackends{&asr, &answerer, tfidf_provider()}};
  EXPECT_EQ(answer_m_aqa(samples[0], c).generated_text, "No");
}

TEST(AnswerMAqa, ArityChecked) {
  Fixture f;
  auto s = f.proxied(gen_m_aqa(f.kb, f.synth)).front();
  s.inputs.pop_back();
  const auto r = answer_m_aqa(s, f.ctx(oracle_config()));
  EXPECT_TRUE(r.failed);
}

TEST(AnswerRAqa, OracleCountAndTraceIdentity) {
  Fixture f;
  const auto c = f.ctx(oracle_config());
  for (const auto& s : f.proxied(gen_r_aqa(f.kb, f.synth))) {
    const auto r = answer_r_aqa(s, c);
    ASSERT_FALSE(r.failed) << r.error;
    EXPECT_EQ(aqa_accuracy(r.generated_text, s.answer), 1) << s.question << " -> " << r.generated_text;
    ASSERT_TRUE(r.retrieval);
    const auto direct = retrieve(s.question, r.transcripts, tfidf_provider(), c.config.retrieval_threshold);
    EXPECT_EQ(r.retrieval->retained, direct.retained);
    EXPECT_EQ(r.retrieval->scores, direct.scores);
    EXPECT_EQ(r.links.size(), r.retrieval->retained.size());
  }
}

TEST(AnswerRAqa, ThresholdOneAnswersFromBareQuestion) {
  Fixture f;
  auto config = oracle_config();
  config.retrieval_threshold = 1.0;
  const auto s = f.proxied(gen_r_aqa(f.kb, f.synth)).front();
  const auto r = answer_r_aqa(s, f.ctx(config));
  EXPECT_FALSE(r.failed);
  EXPECT_TRUE(r.retrieval->retained.empty());
  EXPECT_TRUE(r.prompt.knowledge_block.empty());
  EXPECT_EQ(r.generated_text, "unknown");
}

TEST(AnswerRecord, JsonShape) {
  Fixture f;
  const auto s = f.proxied(gen_r_aqa(f.kb, f.synth)).front();
  const auto r = answer_sample(s, f.ctx(oracle_config()));
  const auto j = answer_record_to_json(r, f.kb);
  EXPECT_EQ(j["sample_id"], s.id);
  EXPECT_EQ(j["task"], "r_aqa");
  EXPECT_EQ(j["retained_indices"].size(), r.retrieval->retained.size());
  EXPECT_EQ(j["chosen_entities"].size(), r.links.size());
  EXPECT_EQ(j["prompt_hash"].get<std::string>().size(), 16u);
  EXPECT_FALSE(j.contains("error"));
}

TEST(LinkingMode, Parse) {
  EXPECT_EQ(parse_linking_mode("oracle"), LinkingMode::kOracle);
  EXPECT_EQ(linking_mode_name(LinkingMode::kPredicted), "predicted");
  EXPECT_EQ(code_of([] { parse_linking_mode("gold"); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace audiopedia
