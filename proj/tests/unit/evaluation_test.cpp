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

#include "audiopedia/evaluation.hpp"

#include <gtest/gtest.h>

#include "audiopedia/adapters.hpp"
#include "test_support.hpp"

namespace audiopedia {
namespace {

using testing::code_of;

struct EvalFixture : ::testing::Test {
  KnowledgeBase kb = testing::business_kb();
  TextProxyRecognizer asr;
  MockOracleAnswerer answerer{kb.relations(), ObjectEquivalence::exact()};
  std::vector<Sample> dataset;

  void SetUp() override {
    SynthConfig c;
    c.seed = 31;
    c.templates = TemplateTable::load(testing::data_path("templates.json"));
    c.m_aqa_samples = 40;
    c.r_aqa_samples = 30;
    for (auto part : {gen_s_aqa(kb, c), gen_m_aqa(kb, c), gen_r_aqa(kb, c)}) {
      synth_audio(part, nullptr, true);
      dataset.insert(dataset.end(), part.begin(), part.end());
    }
  }
  PipelineBackends backends() { return PipelineBackends{&asr, &answerer, tfidf_provider()}; }
};

TEST_F(EvalFixture, OracleMockScoresOneEverywhere) {
  PipelineConfig config;
  config.linking_mode = LinkingMode::kOracle;
  const auto report = run_eval(dataset, PipelineContext{kb, nullptr, config, backends()});
  ASSERT_EQ(report.tasks.size(), 3u);
  for (const auto& [task, agg] : report.tasks) EXPECT_DOUBLE_EQ(agg.accuracy, 1.0) << task_name(task);
  EXPECT_DOUBLE_EQ(*report.aggregate(TaskKind::kSingle)->ael_accuracy, 1.0);
  EXPECT_TRUE(report.aggregate(TaskKind::kRetrieval)->retrieval_f1.has_value());
  EXPECT_FALSE(report.aggregate(TaskKind::kRetrieval)->ael_accuracy.has_value());
}

TEST_F(EvalFixture, KnowledgeOffSAqaIsZero) {
  PipelineConfig config;
  config.linking_mode = LinkingMode::kOracle;
  config.knowledge_enabled = false;
  const auto report = run_eval(dataset, PipelineContext{kb, nullptr, config, backends()});
  EXPECT_DOUBLE_EQ(report.aggregate(TaskKind::kSingle)->accuracy, 0.0);
  for (const auto& row : report.rows) EXPECT_EQ(row.generated_text, "unknown");
}

TEST_F(EvalFixture, AggregatesAreMeansOfRows) {
  const auto index = build_entity_index(kb, KnowledgeSource::partial(0.2, 4));
  PipelineConfig config;
  config.knowledge_source = KnowledgeSource::partial(0.2, 4);
  const auto report = run_eval(dataset, PipelineContext{kb, &index, config, backends()});
  for (const auto& [task, agg] : report.tasks) {
    double acc = 0, ael = 0, f1 = 0;
    std::size_t n = 0;
    for (const auto& row : report.rows) {
      if (row.task != task) continue;
      ++n;
      acc += row.accuracy;
      ael += row.ael.value_or(0);
      f1 += row.retrieval.value_or(0);
    }
    ASSERT_EQ(agg.samples, n);
    EXPECT_DOUBLE_EQ(agg.accuracy, acc / static_cast<double>(n));
    if (agg.ael_accuracy) EXPECT_DOUBLE_EQ(*agg.ael_accuracy, ael / static_cast<double>(n));
    if (agg.retrieval_f1) EXPECT_DOUBLE_EQ(*agg.retrieval_f1, f1 / static_cast<double>(n));
  }
}

TEST_F(EvalFixture, ConcurrentRunMatchesSequential) {
  const auto index = build_entity_index(kb, KnowledgeSource::full());
  const PipelineContext ctx{kb, &index, PipelineConfig{}, backends()};
  const auto a = run_eval(dataset, ctx, EvalOptions{1, "x"});
  const auto b = run_eval(dataset, ctx, EvalOptions{8, "x"});
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST_F(EvalFixture, FailedSampleScoresZeroWithoutAborting) {
  auto broken = dataset;
  broken[0].inputs[0].audio_ref = "missing.wav";
  PipelineConfig config;
  config.linking_mode = LinkingMode::kOracle;
  std::vector<AnswerRecord> records;
  const auto report = run_eval(broken, PipelineContext{kb, nullptr, config, backends()}, {}, &records);
  EXPECT_TRUE(report.rows[0].failed);
  EXPECT_EQ(report.rows[0].accuracy, 0);
  EXPECT_FALSE(report.rows[0].error.empty());
  EXPECT_EQ(records.size(), broken.size());
  for (std::size_t i = 1; i < report.rows.size(); ++i) EXPECT_FALSE(report.rows[i].failed);
}

TEST_F(EvalFixture, NoAnswerer) {
  EXPECT_EQ(code_of([&] {
              run_eval(dataset, PipelineContext{kb, nullptr, PipelineConfig{},
                                                PipelineBackends{&asr, nullptr, tfidf_provider()}});
            }),
            ErrorCode::kAnswererUnavailable);
}

TEST_F(EvalFixture, AblationRowsInOrder) {
  const std::vector<KnowledgeSource> sources{KnowledgeSource::name_only(), KnowledgeSource::partial(0.2, 1),
                                             KnowledgeSource::full()};
  const auto reports = ablation_suite(dataset, kb, sources, PipelineConfig{}, backends(), true);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].label, "Entity-name");
  EXPECT_EQ(reports[1].label, "20% knowledge");
  EXPECT_EQ(reports[2].label, "Full knowledge");
  EXPECT_EQ(reports[3].label, "Oracle");
  EXPECT_EQ(reports[3].linking_mode, "oracle");
  EXPECT_EQ(ablation_suite(dataset, kb, sources, PipelineConfig{}, backends(), false).size(), 3u);
  EXPECT_EQ(code_of([&] { ablation_suite(dataset, kb, {}, PipelineConfig{}, backends()); }),
            ErrorCode::kInvalidArgument);
  const auto table = render_table(reports);
  EXPECT_LT(table.find("Entity-name"), table.find("20% knowledge"));
  EXPECT_LT(table.find("20% knowledge"), table.find("Full knowledge"));
  EXPECT_LT(table.find("Full knowledge"), table.find("Oracle"));
}

TEST_F(EvalFixture, ReportJsonRoundTrip) {
  PipelineConfig config;
  config.linking_mode = LinkingMode::kOracle;
  const auto report = run_eval(dataset, PipelineContext{kb, nullptr, config, backends()}, EvalOptions{1, "run"});
  const auto back = EvalReport::from_json(report.to_json());
  EXPECT_EQ(back.to_json().dump(), report.to_json().dump());
  EXPECT_EQ(render_table(std::span(&back, 1)), render_table(std::span(&report, 1)));
  EXPECT_EQ(code_of([] { EvalReport::from_json(nlohmann::json::object()); }), ErrorCode::kInvalidArgument);
}

TEST(RenderTable, ShowsThreeDecimals) {
  EvalReport r;
  r.label = "eval";
  r.knowledge_source = "full";
  r.linking_mode = "oracle";
  r.tasks.emplace_back(TaskKind::kSingle, TaskAggregate{3, 1.0, 1.0, std::nullopt});
  const auto table = render_table(std::span(&r, 1));
  EXPECT_NE(table.find("1.000"), std::string::npos);
  EXPECT_NE(table.find("-"), std::string::npos);
}

}  // namespace
}  // namespace audiopedia
