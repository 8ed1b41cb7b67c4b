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

#include "audiopedia/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "audiopedia/adapters.hpp"
#include "audiopedia/error.hpp"
#include "audiopedia/evaluation.hpp"
#include "audiopedia/kb.hpp"
#include "audiopedia/linking.hpp"
#include "audiopedia/qa.hpp"
#include "audiopedia/random.hpp"
#include "audiopedia/retrieval.hpp"
#include "audiopedia/strings.hpp"
#include "audiopedia/synth.hpp"

namespace audiopedia {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr std::uint64_t kDevSplitSalt = 0x6465762d73706c74ULL;

struct Options {
  std::string kb;
  std::string task = "all";
  std::string knowledge = "full";
  std::string linking = "predicted";
  std::string threshold = "calibrate";
  std::optional<std::uint64_t> seed;
  std::string endpoints;
  std::string out;
  bool text_proxy = false;
  double noise_rate = 0.0;
  std::string templates;
  std::string equivalence = "exact-object";
  std::size_t max_sentences = 3;
  std::size_t s_samples = 0;
  std::size_t m_samples = 500;
  std::size_t r_samples = 115;
  std::vector<std::string> datasets;
  std::size_t top_k = 5;
  bool no_knowledge = false;
  double partial = 0.2;
  std::size_t in_flight = 1;
  std::vector<std::string> inputs;
};

// Backends chosen from --endpoints / AUDIOPEDIA_ENDPOINTS, falling back to
// the local deterministic ones. --text-proxy forces the local ones.
struct Backends {
  std::unique_ptr<SpeechRecognizer> asr;
  std::unique_ptr<SpeechSynthesizer> tts;
  std::unique_ptr<Answerer> answerer;
  EncoderProvider encoder = tfidf_provider();
};

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  if (!fs::exists(path)) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " path does not exist: " + path);
}

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw Error(ErrorCode::kInvalidArgument, "--seed is required");
  return *o.seed;
}

const std::string& require_out(const Options& o) {
  if (o.out.empty()) throw Error(ErrorCode::kInvalidArgument, "--out is required");
  return o.out;
}

EndpointConfig endpoint_config(const Options& o) {
  std::string path = o.endpoints;
  if (path.empty()) {
    if (const char* env = std::getenv("AUDIOPEDIA_ENDPOINTS")) path = env;
  }
  EndpointConfig config;
  if (!path.empty()) {
    require_file(path, "--endpoints");
    config = EndpointConfig::load(path);
  }
  config.apply_environment();
  return config;
}

Backends make_backends(const Options& o, const KnowledgeBase* kb) {
  Backends b;
  const EndpointConfig config = o.text_proxy ? EndpointConfig{} : endpoint_config(o);
  if (config.asr) {
    b.asr = std::make_unique<RemoteSpeechRecognizer>(*config.asr);
  } else {
    b.asr = std::make_unique<TextProxyRecognizer>();
  }
  if (config.tts) b.tts = std::make_unique<RemoteSpeechSynthesizer>(*config.tts);
  if (config.encode) b.encoder = remote_encoder_provider(*config.encode);
  if (config.answer) {
    b.answerer = std::make_unique<RemoteAnswerer>(*config.answer);
  } else if (kb != nullptr) {
    b.answerer = std::make_unique<MockOracleAnswerer>(kb->relations(), ObjectEquivalence::parse(o.equivalence));
  }
  return b;
}

SynthConfig synth_config(const Options& o, std::uint64_t seed) {
  SynthConfig c;
  c.seed = seed;
  c.max_input_sentences = o.max_sentences;
  c.yes_equivalence = ObjectEquivalence::parse(o.equivalence);
  c.s_aqa_samples = o.s_samples;
  c.m_aqa_samples = o.m_samples;
  c.r_aqa_samples = o.r_samples;
  if (!o.templates.empty()) {
    require_file(o.templates, "--templates");
    c.templates.merge(TemplateTable::load(o.templates));
  }
  return c;
}

std::vector<Sample> load_datasets(const Options& o) {
  if (o.datasets.empty()) throw Error(ErrorCode::kInvalidArgument, "--dataset is required");
  std::vector<Sample> all;
  for (const auto& path : o.datasets) {
    require_file(path, "--dataset");
    for (auto& s : load_dataset(path)) all.push_back(std::move(s));
  }
  return all;
}

KnowledgeBase load_kb(const Options& o) {
  require_file(o.kb, "--kb");
  return load_knowledge_base(o.kb);
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Threshold from --threshold, calibrating on a dev split drawn from the KB
// with a seed distinct from the test split.
double resolve_threshold(const Options& o, const KnowledgeBase* kb, const EncoderProvider& encoder,
                         std::ostream& out) {
  if (o.threshold != "calibrate") {
    try {
      std::size_t used = 0;
      const double t = std::stod(o.threshold, &used);
      if (used != o.threshold.size()) throw std::invalid_argument(o.threshold);
      return t;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "--threshold must be a number or 'calibrate'");
    }
  }
  if (kb == nullptr) throw Error(ErrorCode::kInvalidArgument, "--threshold calibrate needs --kb");
  SynthConfig config = synth_config(o, Rng::derive(require_seed(o), kDevSplitSalt));
  std::vector<RetrievalCase> dev;
  for (const auto& s : gen_r_aqa(*kb, config)) {
    RetrievalCase c;
    c.question = s.question;
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
      c.transcripts.push_back(s.inputs[i].sentence);
      if (s.inputs[i].relevant.value_or(false)) c.gold_relevant.push_back(i);
    }
    dev.push_back(std::move(c));
  }
  const auto grid = default_threshold_grid();
  const double t = calibrate_threshold(dev, encoder, grid);
  out << "calibrated threshold " << fixed3(t) << " on " << dev.size() << " dev samples\n";
  return t;
}

int cmd_ingest(const Options& o, std::ostream& out) {
  const KnowledgeBase kb = load_kb(o);
  out << "entities " << kb.entity_count() << "\n"
      << "triplets " << kb.triplet_count() << "\n"
      << "duplicates " << kb.stats().duplicates << "\n"
      << "relations " << kb.relations().size() << "\n";
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  const KnowledgeBase kb = load_kb(o);
  const SynthConfig config = synth_config(o, require_seed(o));
  const fs::path dir = require_out(o);
  std::vector<TaskKind> tasks;
  if (o.task == "all") {
    tasks = {TaskKind::kSingle, TaskKind::kMulti, TaskKind::kRetrieval};
  } else {
    tasks = {parse_task_name(o.task)};
  }
  const Backends backends = o.text_proxy ? Backends{} : make_backends(o, nullptr);
  json datasets = json::array();
  for (TaskKind task : tasks) {
    std::vector<Sample> samples = task == TaskKind::kSingle  ? gen_s_aqa(kb, config)
                                  : task == TaskKind::kMulti ? gen_m_aqa(kb, config)
                                                             : gen_r_aqa(kb, config);
    if (o.text_proxy || backends.tts) {
      const auto report = synth_audio(samples, o.text_proxy ? nullptr : backends.tts.get(), o.text_proxy);
      for (const auto& f : report.failures) {
        out << "audio failed: " << f.sample_id << " input " << f.input_index << ": " << f.error << "\n";
      }
    }
    const DatasetManifest m = emit_dataset(samples, dir / (std::string(task_name(task)) + ".jsonl"));
    out << task_name(task) << ": " << m.samples << " samples, " << m.unique_answers << " unique answers\n";
    datasets.push_back(m.to_json());
  }
  const json manifest{{"seed", config.seed},
                      {"yes_equivalence", config.yes_equivalence.name()},
                      {"max_input_sentences", config.max_input_sentences},
                      {"datasets", datasets}};
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return kExitOk;
}

int cmd_tts(const Options& o, std::ostream& out) {
  std::vector<Sample> samples = load_datasets(o);
  const Backends backends = make_backends(o, nullptr);
  const auto report = synth_audio(samples, o.text_proxy ? nullptr : backends.tts.get(), o.text_proxy);
  for (const auto& f : report.failures) {
    out << "audio failed: " << f.sample_id << " input " << f.input_index << ": " << f.error << "\n";
  }
  std::string body;
  for (const auto& s : samples) body += sample_to_json(s).dump() + "\n";
  write_file_atomic(require_out(o), body);
  out << report.synthesized << " refs written, " << report.failures.size() << " failed\n";
  return report.failures.empty() ? kExitOk : kExitRuntime;
}

int cmd_link(const Options& o, std::ostream& out) {
  const KnowledgeBase kb = load_kb(o);
  const std::vector<Sample> samples = load_datasets(o);
  const Backends backends = make_backends(o, &kb);
  const KnowledgeSource source = KnowledgeSource::parse(o.knowledge, o.seed.value_or(0));
  const EntityIndex index = build_entity_index(kb, source, backends.encoder);
  const NoiseSpec noise{o.noise_rate, o.seed.value_or(0)};

  std::string trace;
  std::size_t scored = 0, correct = 0;
  auto emit = [&](const Sample& s, std::size_t input, const LinkResult& r) {
    json top = json::array();
    for (std::size_t k = 0; k < r.scores.size() && k < o.top_k; ++k) {
      top.push_back(json{{"entity", kb.name(r.scores[k].first)}, {"score", r.scores[k].second}});
    }
    trace += json{{"sample_id", s.id}, {"input_index", input}, {"chosen_entity_name", kb.name(r.chosen)}, {"top_k", top}}
                 .dump() +
             "\n";
  };
  for (const auto& s : samples) {
    std::vector<std::string> transcripts;
    for (const auto& in : s.inputs) transcripts.push_back(transcribe(in.audio_ref, *backends.asr, noise));
    std::vector<EntityId> predicted, gold;
    if (s.task == TaskKind::kSingle) {
      const LinkResult r = link(join(transcripts, " "), index);
      emit(s, 0, r);
      predicted.push_back(r.chosen);
      gold.push_back(kb.find(s.inputs.front().gold_entity_name).value_or(EntityId{~0u}));
    } else {
      const auto results = link_many(transcripts, index);
      for (std::size_t i = 0; i < results.size(); ++i) {
        emit(s, i, results[i]);
        predicted.push_back(results[i].chosen);
        gold.push_back(kb.find(s.inputs[i].gold_entity_name).value_or(EntityId{~0u}));
      }
    }
    if (s.task != TaskKind::kRetrieval) {
      ++scored;
      correct += static_cast<std::size_t>(ael_accuracy(predicted, gold));
    }
  }
  if (!o.out.empty()) write_file_atomic(o.out, trace);
  out << "knowledge " << source.label() << "\n";
  if (scored > 0) {
    out << "AEL accuracy " << fixed3(static_cast<double>(correct) / static_cast<double>(scored)) << " over "
        << scored << " samples\n";
  }
  return kExitOk;
}

int cmd_retrieve(const Options& o, std::ostream& out) {
  const std::vector<Sample> samples = load_datasets(o);
  std::optional<KnowledgeBase> kb;
  if (!o.kb.empty()) kb = load_kb(o);
  const Backends backends = make_backends(o, nullptr);
  const double threshold = resolve_threshold(o, kb ? &*kb : nullptr, backends.encoder, out);
  const NoiseSpec noise{o.noise_rate, o.seed.value_or(0)};
  std::string trace;
  double f1_sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : samples) {
    if (s.task != TaskKind::kRetrieval) continue;
    std::vector<std::string> transcripts;
    std::vector<std::size_t> gold;
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
      transcripts.push_back(transcribe(s.inputs[i].audio_ref, *backends.asr, noise));
      if (s.inputs[i].relevant.value_or(false)) gold.push_back(i);
    }
    const RetrievalResult r = retrieve(s.question, transcripts, backends.encoder, threshold);
    json retained = json::array(), gold_flags = json::array();
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
      retained.push_back(std::find(r.retained.begin(), r.retained.end(), i) != r.retained.end());
      gold_flags.push_back(s.inputs[i].relevant.value_or(false));
    }
    trace += json{{"sample_id", s.id}, {"threshold", threshold}, {"scores", r.scores}, {"retained", retained},
                  {"gold", gold_flags}}
                 .dump() +
             "\n";
    f1_sum += retrieval_f1(r.retained, gold, s.inputs.size());
    ++n;
  }
  if (!o.out.empty()) write_file_atomic(o.out, trace);
  out << "threshold " << fixed3(threshold) << "\n";
  if (n > 0) out << "retrieval F1 " << fixed3(f1_sum / static_cast<double>(n)) << " over " << n << " samples\n";
  return kExitOk;
}

PipelineConfig pipeline_config(const Options& o, double threshold) {
  PipelineConfig c;
  c.knowledge_enabled = !o.no_knowledge;
  c.knowledge_source = KnowledgeSource::parse(o.knowledge, o.seed.value_or(0));
  c.linking_mode = parse_linking_mode(o.linking);
  c.retrieval_threshold = threshold;
  c.noise = NoiseSpec{o.noise_rate, o.seed.value_or(0)};
  return c;
}

// Per-sample failures never stop a run, but they do fail the command.
int failed_rows(std::span<const EvalReport> reports, std::ostream& err) {
  std::size_t failed = 0;
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      if (!row.failed) continue;
      if (failed++ < 5) err << "sample " << row.sample_id << " failed: " << row.error << "\n";
    }
  }
  if (failed == 0) return kExitOk;
  err << failed << " sample(s) failed\n";
  return kExitRuntime;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const KnowledgeBase kb = load_kb(o);
  const std::vector<Sample> samples = load_datasets(o);
  const Backends backends = make_backends(o, &kb);
  const double threshold = resolve_threshold(o, &kb, backends.encoder, out);
  const PipelineConfig config = pipeline_config(o, threshold);
  std::optional<EntityIndex> index;
  if (config.linking_mode == LinkingMode::kPredicted) {
    index = build_entity_index(kb, config.knowledge_source, backends.encoder);
  }
  PipelineContext ctx{kb, index ? &*index : nullptr, config,
                      PipelineBackends{backends.asr.get(), backends.answerer.get(), backends.encoder}};
  std::vector<AnswerRecord> records;
  const EvalReport report = run_eval(samples, ctx, EvalOptions{o.in_flight, "eval"}, &records);
  const std::string table = render_table(std::span<const EvalReport>(&report, 1));
  if (!o.out.empty()) {
    const fs::path dir = o.out;
    write_file_atomic(dir / "report.json", report.to_json().dump(2) + "\n");
    std::string answers;
    for (const auto& r : records) answers += answer_record_to_json(r, kb).dump() + "\n";
    write_file_atomic(dir / "answers.jsonl", answers);
    write_file_atomic(dir / "table.txt", table);
  }
  out << table;
  return failed_rows(std::span<const EvalReport>(&report, 1), err);
}

int cmd_ablate(const Options& o, std::ostream& out, std::ostream& err) {
  const KnowledgeBase kb = load_kb(o);
  const std::vector<Sample> samples = load_datasets(o);
  const Backends backends = make_backends(o, &kb);
  const std::uint64_t seed = require_seed(o);
  const double threshold = resolve_threshold(o, &kb, backends.encoder, out);
  const PipelineConfig config = pipeline_config(o, threshold);
  const std::vector<KnowledgeSource> sources = {KnowledgeSource::name_only(), KnowledgeSource::partial(o.partial, seed),
                                                KnowledgeSource::full()};
  const auto reports = ablation_suite(samples, kb, sources, config,
                                      PipelineBackends{backends.asr.get(), backends.answerer.get(), backends.encoder},
                                      /*include_oracle=*/true, backends.encoder);
  const std::string table = render_table(reports);
  if (!o.out.empty()) {
    const fs::path dir = o.out;
    json all = json::array();
    for (const auto& r : reports) all.push_back(r.to_json());
    write_file_atomic(dir / "ablation.json", json{{"reports", all}}.dump(2) + "\n");
    write_file_atomic(dir / "ablation_table.txt", table);
  }
  out << table;
  return failed_rows(reports, err);
}

int cmd_report(const Options& o, std::ostream& out) {
  if (o.inputs.empty()) throw Error(ErrorCode::kInvalidArgument, "--in is required");
  std::vector<EvalReport> reports;
  for (const auto& path : o.inputs) {
    require_file(path, "--in");
    json j;
    try {
      j = json::parse(read_file(path));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, path + ": " + e.what());
    }
    if (j.contains("reports")) {
      for (const auto& r : j["reports"]) reports.push_back(EvalReport::from_json(r));
    } else {
      reports.push_back(EvalReport::from_json(j));
    }
  }
  out << render_table(reports);
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoFailure:
    case ErrorCode::kAdapterUnavailable:
    case ErrorCode::kTranscriptionFailed:
    case ErrorCode::kAnswererUnavailable:
    case ErrorCode::kTimeout:
    case ErrorCode::kProtocolError:
    case ErrorCode::kExhaustedRetries:
    case ErrorCode::kDimensionMismatch:
      return kExitRuntime;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Knowledge-intensive audio QA benchmark toolkit", "audiopedia"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags win");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto add_kb = [&](CLI::App* c) { c->add_option("--kb", o.kb, "Triplet knowledge base (TSV or JSON lines)"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Random seed"); };
  auto add_out = [&](CLI::App* c, const char* what) { c->add_option("--out", o.out, what); };
  auto add_backends = [&](CLI::App* c) {
    c->add_option("--endpoints", o.endpoints, "Adapter endpoint config (JSON); env AUDIOPEDIA_ENDPOINTS");
    c->add_flag("--text-proxy", o.text_proxy, "Use local deterministic backends only");
    c->add_option("--noise-rate", o.noise_rate, "Simulated ASR character noise rate")->check(CLI::Range(0.0, 1.0));
  };
  auto add_datasets = [&](CLI::App* c) {
    c->add_option("--dataset", o.datasets, "Dataset file(s) (JSON lines)")->take_all();
  };
  auto add_synth_opts = [&](CLI::App* c) {
    c->add_option("--templates", o.templates, "Question template table (JSON), merged over the defaults");
    c->add_option("--equivalence", o.equivalence, "Yes-equivalence: exact-object | decade-bucket");
  };
  auto add_pipeline = [&](CLI::App* c) {
    c->add_option("--knowledge", o.knowledge, "Knowledge source: name | partial=<f> | full");
    c->add_option("--linking", o.linking, "Entity linking: predicted | oracle");
    c->add_option("--threshold", o.threshold, "Retrieval threshold, or 'calibrate'");
  };

  auto* ingest = app.add_subcommand("ingest", "Load a knowledge base and print its statistics");
  add_kb(ingest);

  auto* synth = app.add_subcommand("synth", "Generate s-AQA / m-AQA / r-AQA datasets and a manifest");
  add_kb(synth);
  add_seed(synth);
  add_out(synth, "Output directory");
  add_backends(synth);
  add_synth_opts(synth);
  synth->add_option("--task", o.task, "s | m | r | all")->check(CLI::IsMember({"s", "m", "r", "all"}));
  synth->add_option("--max-sentences", o.max_sentences, "Max input sentences per s-AQA sample");
  synth->add_option("--s-samples", o.s_samples, "s-AQA sample cap (0 = all)");
  synth->add_option("--m-samples", o.m_samples, "m-AQA target sample count");
  synth->add_option("--r-samples", o.r_samples, "r-AQA target sample count");

  auto* tts = app.add_subcommand("tts", "Fill audio refs of a dataset via TTS or text-proxy");
  add_datasets(tts);
  add_out(tts, "Output dataset file");
  add_backends(tts);

  auto* link_cmd = app.add_subcommand("link", "Run entity linking and report AEL accuracy");
  add_kb(link_cmd);
  add_seed(link_cmd);
  add_datasets(link_cmd);
  add_out(link_cmd, "Linking trace file (JSON lines)");
  add_backends(link_cmd);
  link_cmd->add_option("--knowledge", o.knowledge, "Knowledge source: name | partial=<f> | full");
  link_cmd->add_option("--top-k", o.top_k, "Scores kept per trace record");

  auto* retrieve_cmd = app.add_subcommand("retrieve", "Run r-AQA retrieval and report F1");
  add_kb(retrieve_cmd);
  add_seed(retrieve_cmd);
  add_datasets(retrieve_cmd);
  add_out(retrieve_cmd, "Retrieval trace file (JSON lines)");
  add_backends(retrieve_cmd);
  add_synth_opts(retrieve_cmd);
  retrieve_cmd->add_option("--threshold", o.threshold, "Retrieval threshold, or 'calibrate'");

  auto* eval = app.add_subcommand("eval", "Answer every sample and score it");
  add_kb(eval);
  add_seed(eval);
  add_datasets(eval);
  add_out(eval, "Output directory for report.json, answers.jsonl, table.txt");
  add_backends(eval);
  add_synth_opts(eval);
  add_pipeline(eval);
  eval->add_flag("--no-knowledge", o.no_knowledge, "Knowledge-off baseline");
  eval->add_option("--in-flight", o.in_flight, "Samples processed concurrently");

  auto* ablate = app.add_subcommand("ablate", "Knowledge-source ablation: name / partial / full / oracle");
  add_kb(ablate);
  add_seed(ablate);
  add_datasets(ablate);
  add_out(ablate, "Output directory");
  add_backends(ablate);
  add_synth_opts(ablate);
  add_pipeline(ablate);
  ablate->add_option("--partial", o.partial, "Fraction for the partial-knowledge row")->check(CLI::Range(0.0, 1.0));

  auto* report = app.add_subcommand("report", "Render report files as a table");
  report->add_option("--in", o.inputs, "report.json / ablation.json files")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(o, out);
    if (*synth) return cmd_synth(o, out);
    if (*tts) return cmd_tts(o, out);
    if (*link_cmd) return cmd_link(o, out);
    if (*retrieve_cmd) return cmd_retrieve(o, out);
    if (*eval) return cmd_eval(o, out, err);
    if (*ablate) return cmd_ablate(o, out, err);
    if (*report) return cmd_report(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace audiopedia
