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

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <thread>

#include "audiopedia/error.hpp"
#include "audiopedia/strings.hpp"

namespace audiopedia {

namespace {

std::string source_label(const KnowledgeSource& source) {
  switch (source.kind()) {
    case KnowledgeSource::Kind::kNameOnly: return "Entity-name";
    case KnowledgeSource::Kind::kFull: return "Full knowledge";
    case KnowledgeSource::Kind::kPartial: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%g%% knowledge", source.fraction() * 100.0);
      return buf;
    }
  }
  return "";
}

std::vector<EntityId> gold_entities(const KnowledgeBase& kb, const Sample& sample) {
  std::vector<EntityId> out;
  const std::size_t n = sample.task == TaskKind::kSingle ? 1 : sample.inputs.size();
  for (std::size_t i = 0; i < n && i < sample.inputs.size(); ++i) {
    const auto id = kb.find(sample.inputs[i].gold_entity_name);
    if (!id) throw Error(ErrorCode::kUnknownEntity, sample.inputs[i].gold_entity_name);
    out.push_back(*id);
  }
  return out;
}

SampleRow score(const Sample& sample, const AnswerRecord& record, const KnowledgeBase& kb) {
  SampleRow row;
  row.sample_id = sample.id;
  row.task = sample.task;
  row.generated_text = record.generated_text;
  if (record.failed) {
    row.failed = true;
    row.error = record.error;
    row.accuracy = 0;
    if (sample.task == TaskKind::kRetrieval) {
      row.retrieval = 0.0;
    } else {
      row.ael = 0;
    }
    return row;
  }
  try {
    row.accuracy = aqa_accuracy(record.generated_text, sample.answer);
    if (sample.task == TaskKind::kRetrieval) {
      std::vector<std::size_t> gold;
      for (std::size_t i = 0; i < sample.inputs.size(); ++i) {
        if (sample.inputs[i].relevant.value_or(false)) gold.push_back(i);
      }
      const auto& retained = record.retrieval ? record.retrieval->retained : std::vector<std::size_t>{};
      row.retrieval = retrieval_f1(retained, gold, sample.inputs.size());
    } else {
      const auto predicted = record.chosen_entities();
      row.ael = ael_accuracy(predicted, gold_entities(kb, sample));
    }
  } catch (const Error& e) {
    row = SampleRow{sample.id, sample.task, 0, std::nullopt, std::nullopt, true, e.what(), record.generated_text};
  }
  return row;
}

}  // namespace

int aqa_accuracy(std::string_view generated, std::string_view gold) {
  const std::string g = normalize_text(gold);
  if (g.empty()) throw Error(ErrorCode::kEmptyGold, "gold answer is empty");
  return contains(normalize_text(generated), g) ? 1 : 0;
}

int ael_accuracy(std::span<const EntityId> predicted, std::span<const EntityId> gold) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorCode::kArityMismatch, std::to_string(predicted.size()) + " predictions for " +
                                               std::to_string(gold.size()) + " gold entities");
  }
  return std::equal(predicted.begin(), predicted.end(), gold.begin()) ? 1 : 0;
}

double retrieval_f1(std::span<const std::size_t> retained, std::span<const std::size_t> gold, std::size_t pool_size) {
  for (auto span : {retained, gold}) {
    for (std::size_t i : span) {
      if (i >= pool_size) throw Error(ErrorCode::kIndexOutOfBounds, "pool index " + std::to_string(i));
    }
  }
  const std::set<std::size_t> r(retained.begin(), retained.end());
  const std::set<std::size_t> g(gold.begin(), gold.end());
  if (r.empty() && g.empty()) return 1.0;
  if (r.empty() || g.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i : r) hits += g.count(i);
  if (hits == 0) return 0.0;
  const double precision = static_cast<double>(hits) / static_cast<double>(r.size());
  const double recall = static_cast<double>(hits) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

const TaskAggregate* EvalReport::aggregate(TaskKind task) const {
  for (const auto& [t, agg] : tasks) {
    if (t == task) return &agg;
  }
  return nullptr;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json aggregates = nlohmann::json::object();
  for (const auto& [task, agg] : tasks) {
    nlohmann::json a{{"samples", agg.samples}, {"accuracy", agg.accuracy}};
    if (agg.ael_accuracy) a["ael_accuracy"] = *agg.ael_accuracy;
    if (agg.retrieval_f1) a["retrieval_f1"] = *agg.retrieval_f1;
    aggregates[std::string(task_name(task))] = std::move(a);
  }
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"sample_id", r.sample_id},
                       {"task", task_name(r.task)},
                       {"accuracy", r.accuracy},
                       {"failed", r.failed},
                       {"generated_text", r.generated_text}};
    if (r.ael) row["ael"] = *r.ael;
    if (r.retrieval) row["retrieval_f1"] = *r.retrieval;
    if (r.failed) row["error"] = r.error;
    rows_json.push_back(std::move(row));
  }
  return nlohmann::json{{"label", label},
                        {"config",
                         {{"knowledge_source", knowledge_source},
                          {"knowledge_enabled", knowledge_enabled},
                          {"linking_mode", linking_mode},
                          {"threshold", threshold}}},
                        {"aggregates", std::move(aggregates)},
                        {"rows", std::move(rows_json)}};
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport r;
  try {
    r.label = j.value("label", "");
    const auto& config = j.at("config");
    r.knowledge_source = config.value("knowledge_source", "");
    r.knowledge_enabled = config.value("knowledge_enabled", true);
    r.linking_mode = config.value("linking_mode", "");
    r.threshold = config.value("threshold", 0.0);
    for (const auto& [name, a] : j.at("aggregates").items()) {
      TaskAggregate agg;
      agg.samples = a.at("samples").get<std::size_t>();
      agg.accuracy = a.at("accuracy").get<double>();
      if (a.contains("ael_accuracy")) agg.ael_accuracy = a["ael_accuracy"].get<double>();
      if (a.contains("retrieval_f1")) agg.retrieval_f1 = a["retrieval_f1"].get<double>();
      r.tasks.emplace_back(parse_task_name(name), agg);
    }
    std::sort(r.tasks.begin(), r.tasks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& row : j.value("rows", nlohmann::json::array())) {
      SampleRow s;
      s.sample_id = row.at("sample_id").get<std::string>();
      s.task = parse_task_name(row.at("task").get<std::string>());
      s.accuracy = row.at("accuracy").get<int>();
      s.failed = row.value("failed", false);
      s.generated_text = row.value("generated_text", "");
      s.error = row.value("error", "");
      if (row.contains("ael")) s.ael = row["ael"].get<int>();
      if (row.contains("retrieval_f1")) s.retrieval = row["retrieval_f1"].get<double>();
      r.rows.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad report: ") + e.what());
  }
  return r;
}

EvalReport run_eval(std::span<const Sample> dataset, const PipelineContext& ctx, const EvalOptions& options) {
  return run_eval(dataset, ctx, options, nullptr);
}

EvalReport run_eval(std::span<const Sample> dataset, const PipelineContext& ctx, const EvalOptions& options,
                    std::vector<AnswerRecord>* records) {
  if (ctx.backends.answerer == nullptr) throw Error(ErrorCode::kAnswererUnavailable, "no answerer configured");
  std::vector<AnswerRecord> answers(dataset.size());
  const std::size_t workers = std::clamp<std::size_t>(options.max_in_flight, 1, std::max<std::size_t>(dataset.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < dataset.size(); ++i) answers[i] = answer_sample(dataset[i], ctx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < dataset.size(); i = next++) answers[i] = answer_sample(dataset[i], ctx);
      });
    }
    for (auto& t : pool) t.join();
  }

  EvalReport report;
  report.label = options.label;
  report.knowledge_source = ctx.config.knowledge_source.label();
  report.knowledge_enabled = ctx.config.knowledge_enabled;
  report.linking_mode = std::string(linking_mode_name(ctx.config.linking_mode));
  report.threshold = ctx.config.retrieval_threshold;
  for (std::size_t i = 0; i < dataset.size(); ++i) report.rows.push_back(score(dataset[i], answers[i], ctx.kb));

  for (TaskKind task : {TaskKind::kSingle, TaskKind::kMulti, TaskKind::kRetrieval}) {
    TaskAggregate agg;
    double acc = 0.0, ael = 0.0, f1 = 0.0;
    std::size_t n_ael = 0, n_f1 = 0;
    for (const auto& row : report.rows) {
      if (row.task != task) continue;
      ++agg.samples;
      acc += row.accuracy;
      if (row.ael) {
        ael += *row.ael;
        ++n_ael;
      }
      if (row.retrieval) {
        f1 += *row.retrieval;
        ++n_f1;
      }
    }
    if (agg.samples == 0) continue;
    agg.accuracy = acc / static_cast<double>(agg.samples);
    if (task != TaskKind::kRetrieval) agg.ael_accuracy = n_ael ? ael / static_cast<double>(n_ael) : 0.0;
    if (task == TaskKind::kRetrieval) agg.retrieval_f1 = n_f1 ? f1 / static_cast<double>(n_f1) : 0.0;
    report.tasks.emplace_back(task, agg);
  }
  if (records != nullptr) *records = std::move(answers);
  return report;
}

std::vector<EvalReport> ablation_suite(std::span<const Sample> dataset, const KnowledgeBase& kb,
                                       std::span<const KnowledgeSource> sources, const PipelineConfig& config,
                                       const PipelineBackends& backends, bool include_oracle,
                                       const EncoderProvider& index_encoder) {
  if (sources.empty()) throw Error(ErrorCode::kInvalidArgument, "ablation needs at least one knowledge source");
  std::vector<EvalReport> reports;
  for (const auto& source : sources) {
    const EntityIndex index = build_entity_index(kb, source, index_encoder);
    PipelineContext ctx{kb, &index, config, backends};
    ctx.config.knowledge_source = source;
    ctx.config.knowledge_enabled = true;
    ctx.config.linking_mode = LinkingMode::kPredicted;
    reports.push_back(run_eval(dataset, ctx, EvalOptions{1, source_label(source)}));
  }
  if (include_oracle) {
    PipelineContext ctx{kb, nullptr, config, backends};
    ctx.config.knowledge_source = KnowledgeSource::full();
    ctx.config.knowledge_enabled = true;
    ctx.config.linking_mode = LinkingMode::kOracle;
    reports.push_back(run_eval(dataset, ctx, EvalOptions{1, "Oracle"}));
  }
  return reports;
}

std::string render_table(std::span<const EvalReport> reports) {
  auto cell = [](std::optional<double> v) {
    char buf[16];
    if (!v) return std::string("      -");
    std::snprintf(buf, sizeof buf, "%7.3f", *v);
    return std::string(buf);
  };
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %-12s %-9s %-9s %7s %7s %7s %7s %7s %7s\n", "Run", "Knowledge", "Infused",
                "Linking", "s-AQA", "m-AQA", "r-AQA", "AEL(s)", "AEL(m)", "F1(r)");
  out += line;
  for (const auto& r : reports) {
    auto get = [&](TaskKind t) { return r.aggregate(t); };
    const auto* s = get(TaskKind::kSingle);
    const auto* m = get(TaskKind::kMulti);
    const auto* q = get(TaskKind::kRetrieval);
    std::snprintf(line, sizeof line, "%-20s %-12s %-9s %-9s", r.label.empty() ? "-" : r.label.c_str(),
                  r.knowledge_source.c_str(), r.knowledge_enabled ? "yes" : "no", r.linking_mode.c_str());
    out += line;
    out += " " + cell(s ? std::optional<double>(s->accuracy) : std::nullopt);
    out += " " + cell(m ? std::optional<double>(m->accuracy) : std::nullopt);
    out += " " + cell(q ? std::optional<double>(q->accuracy) : std::nullopt);
    out += " " + cell(s ? s->ael_accuracy : std::nullopt);
    out += " " + cell(m ? m->ael_accuracy : std::nullopt);
    out += " " + cell(q ? q->retrieval_f1 : std::nullopt);
    out += "\n";
  }
  return out;
}

}  // namespace audiopedia
