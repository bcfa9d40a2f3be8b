// src/cli.cc

// Copyright 2026 The halscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include "halscope/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <unistd.h>

#include <yaml-cpp/yaml.h>

#include "CLI11.hpp"

#include "halscope/corruptor.h"
#include "halscope/detector.h"
#include "halscope/errors.h"
#include "halscope/mt_metrics.h"
#include "halscope/perturb.h"
#include "halscope/provenance.h"
#include "halscope/report.h"
#include "halscope/simulator.h"
#include "halscope/synthetic.h"
#include "halscope/text.h"

namespace halscope {

namespace fs = std::filesystem;

BackendFactory MakeBackendFactory(const std::string &spec, const Corpus &corpus) {
  if (spec.rfind("sim:", 0) == 0) {
    std::string path = spec.substr(4);
    if (path.empty()) throw Error(Errc::kInvalidConfig, "sim: needs a config file");
    SimBackendConfig config = LoadSimConfig(path);
    auto index = std::make_shared<const SpokenTextIndex>(corpus);
    return [config, index]() -> std::unique_ptr<Backend> {
      return std::make_unique<SimulatedBackend>(config, index);
    };
  }
  ChannelFactory channel = ParseChannelSpec(spec);
  return [channel, spec]() -> std::unique_ptr<Backend> {
    return std::make_unique<ExternalBackend>(channel, spec);
  };
}

std::shared_ptr<const PerplexityProvider> MakeLanguageModel(
    const std::string &spec,
    const std::vector<std::vector<std::string>> &training_texts) {
  if (spec.rfind("builtin", 0) == 0) {
    int order = 2;
    SmoothingConfig smoothing;
    if (spec.size() > 7) {
      if (spec[7] != ':')
        throw Error(Errc::kInvalidConfig, "expected builtin:<order>,<k>, got " + spec);
      std::string params = spec.substr(8);
      auto comma = params.find(',');
      try {
        order = std::stoi(params.substr(0, comma));
        if (comma != std::string::npos) smoothing.k = std::stod(params.substr(comma + 1));
      } catch (const std::logic_error &) {
        throw Error(Errc::kInvalidConfig, "expected builtin:<order>,<k>, got " + spec);
      }
    }
    return std::make_shared<NgramLanguageModel>(
        NgramLanguageModel::Train(training_texts, order, smoothing));
  }
  return std::make_shared<ExternalPerplexityProvider>(ParseChannelSpec(spec), spec);
}

namespace {

void FlattenYaml(const YAML::Node &node, const std::string &prefix,
                 std::vector<std::string> &out) {
  if (node.IsMap()) {
    for (const auto &kv : node) {
      std::string key = kv.first.as<std::string>();
      if (prefix.empty() && key == "thresholds") key = "t";
      FlattenYaml(kv.second, prefix.empty() ? key : prefix + "-" + key, out);
    }
    return;
  }
  if (node.IsSequence()) {
    for (const auto &item : node) FlattenYaml(item, prefix, out);
    return;
  }
  if (node.IsNull()) return;
  const std::string value = node.as<std::string>();
  if (value == "true") {
    out.push_back("--" + prefix);
  } else if (value != "false") {
    out.push_back("--" + prefix);
    out.push_back(value);
  }
}

}  // namespace

std::vector<std::string> ConfigToArgs(const std::string &yaml_path) {
  if (!fs::exists(yaml_path)) throw Error(Errc::kMissingFile, yaml_path);
  try {
    YAML::Node root = YAML::LoadFile(yaml_path);
    if (!root.IsMap() && !root.IsNull())
      throw Error(Errc::kInvalidConfig, yaml_path + ": expected a mapping");
    std::vector<std::string> out;
    FlattenYaml(root, "", out);
    return out;
  } catch (const YAML::Exception &e) {
    throw Error(Errc::kInvalidConfig, yaml_path + ": " + e.what());
  }
}

namespace {

struct Flags {
  std::string manifest;
  std::string backend;
  std::string lm = "builtin:2,0.1";
  std::string lm_train;
  std::string vectorizer = "tfidf";
  double t_wer = 30.0;
  double t_cos = 0.2;
  double t_ppl = 200.0;
  int min_ngram = 1;
  int min_repeats = 3;
  bool score_all = false;
  std::string placement = "begin";
  double amplitude = 0.5;
  double duration = 1.0;
  std::string mode = "add";
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::size_t jobs = 1;
  std::size_t batch = 8;
  bool exclude_zero_wer = false;
  std::string model_name = "model";
  std::string scheme = "uu";
  std::string volume = "8%";
  int rr_pairs = 10;
  std::vector<std::string> reports;
  std::string train_manifest;
  std::string train_text;
  std::size_t k = 5;
  double copy_threshold = 0.95;
  std::string classes = "HALLUCINATION";
  std::string sim_config;
  std::string listen;
  std::size_t utterances = 500;
  std::size_t pool_size = 40;
  double noisy_onset_fraction = 0.05;
  std::string name = "synthetic";
};

std::vector<std::vector<std::string>> ReadSentences(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kMissingFile, path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = Tokenize(NormalizeText(line));
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

std::vector<std::vector<std::string>> References(const Corpus &corpus) {
  std::vector<std::vector<std::string>> out;
  for (const Utterance &u : corpus.utterances()) out.push_back(Tokenize(u.reference));
  return out;
}

std::vector<std::vector<std::string>> LmTrainingTexts(const Flags &f,
                                                      const Corpus &corpus) {
  return f.lm_train.empty() ? References(corpus) : ReadSentences(f.lm_train);
}

Vectorizer FitVectorizer(const Flags &f, const Corpus &corpus) {
  Vectorizer v(f.vectorizer == "counts" ? VectorizerMode::kCounts
                                        : VectorizerMode::kTfIdf);
  v.Fit(References(corpus));
  return v;
}

ScoringConfig Scoring(const Flags &f) {
  ScoringConfig s;
  s.thresholds = {f.t_wer, f.t_cos, f.t_ppl};
  s.oscillation = {f.min_ngram, f.min_repeats};
  s.score_all = f.score_all;
  return s;
}

NoiseSpec Noise(const Flags &f) {
  NoiseMode mode = ParseMode(f.mode);
  return ParsePlacement(f.placement) == NoisePlacement::kBegin
             ? NoiseSpec::Begin(f.amplitude, f.duration, mode, f.seed)
             : NoiseSpec::Whole(f.amplitude, mode, f.seed);
}

void WriteRatioTables(std::span<const DetectionReport> reports, const fs::path &dir) {
  WriteTextFile(dir / "halluc_ratio.csv", RatioLongCsv(reports));
  WriteTextFile(dir / "halluc_ratio_table.csv", RatioTableCsv(reports));
}

void PrintSummary(const DetectionReport &r, std::ostream &out) {
  out << "natural: evaluated=" << r.natural.evaluated
      << " failed=" << r.natural.failed
      << " corpus_wer=" << FormatDouble(r.natural.corpus_wer)
      << " hallucinations=" << r.natural.hallucinations
      << " rate=" << FormatDouble(r.natural.halluc_rate) << '\n';
  if (!r.perturbed_records.empty() || r.natural.evaluated > 0) {
    out << "perturbed: evaluated=" << r.perturbed.evaluated
        << " failed=" << r.perturbed.failed
        << " corpus_wer=" << FormatDouble(r.perturbed.corpus_wer)
        << " hallucinations=" << r.perturbed.hallucinations
        << " rate=" << FormatDouble(r.perturbed.halluc_rate) << '\n';
  }
  out << "susceptibility_score=" << FormatDouble(r.susceptibility_score) << '\n';
}

DistributionOptions Distributions(const Flags &f) {
  DistributionOptions d;
  d.exclude_zero_wer = f.exclude_zero_wer;
  return d;
}

int CmdEvaluate(const Flags &f, std::ostream &out) {
  Corpus corpus = LoadManifest(f.manifest);
  auto lm = MakeLanguageModel(f.lm, LmTrainingTexts(f, corpus));
  Vectorizer vectorizer = FitVectorizer(f, corpus);
  BackendPool pool(MakeBackendFactory(f.backend, corpus), f.jobs);
  RecordScorer scorer(vectorizer, *lm, Scoring(f));
  DetectionReport report;
  report.model = f.model_name;
  report.dataset = corpus.name();
  report.scoring = scorer.config();
  report.natural_records = EvaluateCorpus(pool, corpus, FileAudioSource(), scorer,
                                          Phase::kNatural, {f.batch});
  report.Finalize();

  BleuStats bleu;
  ChrfStats chrf;
  double rouge = 0.0;
  std::size_t scored = 0;
  for (const EvalRecord &r : report.natural_records) {
    if (r.failed()) continue;
    bleu += ComputeBleuStats(r.reference, r.hypothesis);
    chrf += ComputeChrfStats(r.reference, r.hypothesis);
    rouge += Rouge1(r.reference, r.hypothesis);
    ++scored;
  }
  nlohmann::ordered_json metrics;
  metrics["model"] = report.model;
  metrics["dataset"] = report.dataset;
  metrics["utterances"] = scored;
  metrics["wer"] = report.natural.corpus_wer;
  metrics["bleu"] = scored ? CorpusBleu(bleu) : 0.0;
  metrics["chrf2"] = scored ? ChrfScore(chrf) : 0.0;
  metrics["rouge1"] = scored ? rouge / scored : 0.0;

  fs::path dir = f.out_dir;
  ExportReport(report, dir, Distributions(f));
  WriteTextFile(dir / "metrics.json", metrics.dump(2) + "\n");
  out << "wer=" << FormatDouble(metrics["wer"].get<double>())
      << " bleu=" << FormatDouble(metrics["bleu"].get<double>())
      << " chrf2=" << FormatDouble(metrics["chrf2"].get<double>())
      << " rouge1=" << FormatDouble(metrics["rouge1"].get<double>()) << '\n';
  for (ErrorClass c : kAllErrorClasses)
    out << ErrorClassName(c) << '=' << report.natural.count(c) << '\n';
  return kExitOk;
}

int CmdDetect(const Flags &f, std::ostream &out) {
  Corpus corpus = LoadManifest(f.manifest);
  auto lm = MakeLanguageModel(f.lm, LmTrainingTexts(f, corpus));
  Vectorizer vectorizer = FitVectorizer(f, corpus);
  BackendPool pool(MakeBackendFactory(f.backend, corpus), f.jobs);
  DetectOptions options;
  options.scoring = Scoring(f);
  options.noise = Noise(f);
  options.run.batch_size = f.batch;
  options.model_name = f.model_name;
  DetectionReport report =
      Detect(pool, corpus, FileAudioSource(), vectorizer, *lm, options);
  fs::path dir = f.out_dir;
  ExportReport(report, dir, Distributions(f));
  WriteRatioTables(std::span<const DetectionReport>(&report, 1), dir);
  PrintSummary(report, out);
  return kExitOk;
}

int CmdPerturb(const Flags &f, std::ostream &out) {
  Corpus corpus = LoadManifest(f.manifest);
  AudioSource audio = PerturbedAudioSource(FileAudioSource(), Noise(f));
  fs::path dir = f.out_dir;
  fs::create_directories(dir / "wav");
  std::vector<Utterance> written;
  for (const Utterance &u : corpus.utterances()) {
    Utterance p = u;
    p.audio_path = "wav/" + u.id + ".wav";
    WriteWav(dir / p.audio_path, audio(u), SampleEncoding::kFloat32);
    written.push_back(std::move(p));
  }
  fs::path manifest = dir / (corpus.name() + ".tsv");
  WriteManifest(manifest, Corpus(corpus.name(), std::move(written)));
  out << "wrote " << corpus.size() << " perturbed utterances to " << manifest.string() << '\n';
  return kExitOk;
}

CorruptionScheme Scheme(const Flags &f) {
  CorruptionScheme s;
  s.kind = ParseCorruptionKind(f.scheme);
  s.rr_pair_count = f.rr_pairs;
  s.seed = f.seed;
  std::string v = f.volume;
  try {
    if (!v.empty() && v.back() == '%') {
      s.fraction = std::stod(v.substr(0, v.size() - 1)) / 100.0;
    } else if (v.find_first_of(".eE") != std::string::npos) {
      s.fraction = std::stod(v);
    } else {
      long long n = std::stoll(v);
      if (n <= 0) throw Error(Errc::kInvalidVolume, "volume must be positive");
      s.count = static_cast<std::size_t>(n);
    }
  } catch (const std::logic_error &) {
    throw Error(Errc::kInvalidVolume, "cannot parse volume '" + v + "'");
  }
  s.Validate();
  return s;
}

int CmdCorrupt(const Flags &f, std::ostream &out) {
  Corpus corpus = LoadManifest(f.manifest);
  CorruptionResult result = Corrupt(corpus, Scheme(f));
  fs::path dir = f.out_dir;
  fs::create_directories(dir);
  fs::path manifest = dir / (result.corpus.name() + ".tsv");
  WriteManifest(manifest, result.corpus);
  WriteTextFile(dir / "corruption.json", CorruptionManifestToJson(result.manifest));
  out << "injected " << result.manifest.corrupted_ids.size() << " pairs into "
      << manifest.string() << '\n';
  return kExitOk;
}

int CmdProvenance(const Flags &f, std::ostream &out) {
  if (f.reports.size() != 1)
    throw Error(Errc::kInvalidConfig, "provenance takes exactly one --report");
  DetectionReport report = DetectionReportFromJson(ReadTextFile(f.reports.front()));
  std::map<std::string, std::string> texts;
  if (!f.train_manifest.empty()) {
    ManifestOptions mo;
    mo.resolve_relative_paths = false;
    for (const Utterance &u : LoadManifest(f.train_manifest, mo).utterances())
      texts[u.id] = u.reference;
  } else if (!f.train_text.empty()) {
    std::ifstream in(f.train_text);
    if (!in) throw Error(Errc::kMissingFile, f.train_text);
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n)
      if (!NormalizeText(line).empty()) texts["line-" + std::to_string(n)] = line;
  } else {
    throw Error(Errc::kInvalidConfig, "provenance needs --train-manifest or --train-text");
  }
  TfIdfIndex index = TfIdfIndex::Build(texts);

  std::vector<ErrorClass> wanted;
  std::string list = f.classes;
  for (std::size_t pos = 0; pos <= list.size();) {
    auto comma = list.find(',', pos);
    std::string name = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto c = ParseErrorClass(name);
    if (!c) throw Error(Errc::kInvalidConfig, "unknown class '" + name + "'");
    wanted.push_back(*c);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  std::vector<EvalRecord> selected;
  for (const auto *records : {&report.natural_records, &report.perturbed_records})
    for (const EvalRecord &r : *records)
      if (!r.failed() && std::find(wanted.begin(), wanted.end(), r.error_class) != wanted.end())
        selected.push_back(r);
  ProvenanceOptions options{f.k, f.copy_threshold};
  auto entries = ProvenanceReport(index, selected, options);
  fs::path dir = f.out_dir;
  fs::create_directories(dir);
  WriteTextFile(dir / "provenance.json", ProvenanceToJson(entries, options));
  std::size_t copied = 0;
  for (const auto &e : entries) copied += e.verdict == Verdict::kCopied;
  out << "records=" << entries.size() << " copied=" << copied
      << " generated=" << entries.size() - copied << '\n';
  return kExitOk;
}

int CmdReport(const Flags &f, std::ostream &out) {
  if (f.reports.empty()) throw Error(Errc::kInvalidConfig, "report needs --report");
  std::vector<DetectionReport> reports;
  for (const std::string &path : f.reports)
    reports.push_back(DetectionReportFromJson(ReadTextFile(path)));
  fs::path dir = f.out_dir;
  for (const DetectionReport &r : reports) {
    fs::path sub = reports.size() == 1 ? dir : dir / (r.model + "__" + r.dataset);
    ExportReport(r, sub, Distributions(f));
  }
  WriteRatioTables(reports, dir);
  out << RatioLongCsv(reports);
  return kExitOk;
}

int CmdSimulateBackend(const Flags &f, std::ostream &err) {
  Corpus corpus = LoadManifest(f.manifest);
  SimBackendConfig config = LoadSimConfig(f.sim_config);
  auto index = std::make_shared<const SpokenTextIndex>(corpus);
  auto lm = MakeLanguageModel(f.lm, LmTrainingTexts(f, corpus));
  RequestHandler handler = MakeSimRequestHandler(config, index, lm);
  if (f.listen.empty()) {
    FdLineChannel stdio(STDIN_FILENO, STDOUT_FILENO, "stdio", false, false);
    ServeChannel(stdio, handler, kAsrHelloRole);
    return kExitOk;
  }
  auto colon = f.listen.rfind(':');
  std::string host = colon == std::string::npos ? "127.0.0.1" : f.listen.substr(0, colon);
  int port = std::stoi(colon == std::string::npos ? f.listen : f.listen.substr(colon + 1));
  TcpListener listener(host.empty() ? "127.0.0.1" : host, port);
  err << "listening on " << host << ':' << listener.port() << std::endl;
  listener.Serve([&](LineChannel &ch) { ServeChannel(ch, handler, kAsrHelloRole); });
  return kExitOk;
}

int CmdSynthCorpus(const Flags &f, std::ostream &out) {
  SyntheticConfig sc;
  sc.name = f.name;
  sc.utterances = f.utterances;
  sc.pool_size = f.pool_size;
  sc.seed = f.seed;
  sc.noisy_onset_fraction = f.noisy_onset_fraction;
  SyntheticCorpus synthetic = MakeSyntheticCorpus(sc);
  fs::path dir = f.out_dir;
  fs::path manifest = WriteSyntheticCorpus(synthetic, dir);
  std::string lm_train;
  for (const auto &tokens : synthetic.LmTrainingTexts()) lm_train += JoinTokens(tokens) + "\n";
  WriteTextFile(dir / "lm_train.txt", lm_train);
  WriteTextFile(dir / "sim.yaml",
                "seed: " + std::to_string(f.seed) +
                    "\nbase_confusion_rate: 0.02\nnoise_sensitivity: 2.0\n"
                    "p_halluc: 0.3\np_osc: 0.01\nenergy_threshold: 0.02\n"
                    "memorized_pool_file: pool.txt\n");
  out << "wrote " << synthetic.corpus.size() << " utterances to " << manifest.string() << '\n';
  return kExitOk;
}

// Moves "--config FILE" out of |args| and splices the file's flags in right
// after the subcommand, so later command-line flags take precedence.
std::vector<std::string> ExpandConfig(std::vector<std::string> args) {
  for (std::size_t i = 2; i < args.size(); ++i) {
    std::string path;
    std::size_t drop = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      drop = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      drop = 1;
    } else {
      continue;
    }
    args.erase(args.begin() + i, args.begin() + i + drop);
    std::vector<std::string> extra = ConfigToArgs(path);
    args.insert(args.begin() + 2, extra.begin(), extra.end());
    break;
  }
  return args;
}

}  // namespace

int RunCli(const std::vector<std::string> &raw_args, std::ostream &out,
           std::ostream &err) {
  Flags f;
  CLI::App app{"Detect, classify and induce hallucinations in speech recognition output",
               "halscope"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto config_opt = [](CLI::App *s) {
    s->add_option("--config", "YAML file of flag values; command-line flags win");
  };
  auto corpus_opt = [&](CLI::App *s) {
    s->add_option("--manifest", f.manifest, "TSV manifest: id, audio path, transcript")
        ->required();
  };
  auto out_opt = [&](CLI::App *s) {
    s->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
  };
  auto scoring_opts = [&](CLI::App *s) {
    s->add_option("--backend", f.backend, "sim:<config.yaml> | exec:<command> | tcp:<host:port>")
        ->required();
    s->add_option("--lm", f.lm, "builtin:<order>,<k> | exec:<command> | tcp:<host:port>")
        ->capture_default_str();
    s->add_option("--lm-train", f.lm_train,
                  "Training sentences for the builtin LM (default: corpus references)");
    s->add_option("--vectorizer", f.vectorizer, "Sentence vectors for cosine")
        ->check(CLI::IsMember({"tfidf", "counts"}))
        ->capture_default_str();
    s->add_option("--t-wer", f.t_wer, "WER threshold (percent)")->capture_default_str();
    s->add_option("--t-cos", f.t_cos, "Cosine threshold")->capture_default_str();
    s->add_option("--t-ppl", f.t_ppl, "Perplexity threshold")->capture_default_str();
    s->add_option("--osc-min-ngram", f.min_ngram)->capture_default_str();
    s->add_option("--osc-min-repeats", f.min_repeats)->capture_default_str();
    s->add_flag("--score-all", f.score_all, "Compute cos and ppl for every record");
    s->add_option("--jobs", f.jobs, "Parallel backend handles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--batch", f.batch, "Requests per round trip")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--model-name", f.model_name)->capture_default_str();
    s->add_flag("--exclude-zero-wer", f.exclude_zero_wer, "Drop WER = 0 from WER histograms");
  };
  auto noise_opts = [&](CLI::App *s) {
    s->add_option("--noise-placement", f.placement)
        ->check(CLI::IsMember({"begin", "whole"}))
        ->capture_default_str();
    s->add_option("--noise-amplitude", f.amplitude)
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    s->add_option("--noise-duration", f.duration, "Seconds (begin placement)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--noise-mode", f.mode)
        ->check(CLI::IsMember({"add", "replace"}))
        ->capture_default_str();
    s->add_option("--seed", f.seed)->capture_default_str();
  };

  auto *evaluate = app.add_subcommand("evaluate", "Transcribe and score a corpus");
  config_opt(evaluate);
  corpus_opt(evaluate);
  scoring_opts(evaluate);
  out_opt(evaluate);

  auto *detect = app.add_subcommand("detect", "Perturbation-based hallucination detection");
  config_opt(detect);
  corpus_opt(detect);
  scoring_opts(detect);
  noise_opts(detect);
  out_opt(detect);

  auto *perturb = app.add_subcommand("perturb", "Write noise-perturbed copies of a corpus");
  config_opt(perturb);
  corpus_opt(perturb);
  noise_opts(perturb);
  out_opt(perturb);

  auto *corrupt = app.add_subcommand("corrupt", "Inject label-mismatch pairs into a corpus");
  config_opt(corrupt);
  corpus_opt(corrupt);
  corrupt->add_option("--scheme", f.scheme)
      ->check(CLI::IsMember({"uu", "rr", "ru", "ur"}, CLI::ignore_case))
      ->capture_default_str();
  corrupt->add_option("--volume", f.volume, "Percentage (8%), fraction (0.08) or count")
      ->capture_default_str();
  corrupt->add_option("--rr-pairs", f.rr_pairs)->check(CLI::PositiveNumber)->capture_default_str();
  corrupt->add_option("--seed", f.seed)->capture_default_str();
  out_opt(corrupt);

  auto *provenance = app.add_subcommand("provenance", "Search training labels for hallucinations");
  config_opt(provenance);
  provenance->add_option("--report", f.reports, "report.json from detect")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  provenance->add_option("--train-manifest", f.train_manifest);
  provenance->add_option("--train-text", f.train_text, "One training transcript per line");
  provenance->add_option("--k", f.k)->check(CLI::PositiveNumber)->capture_default_str();
  provenance->add_option("--copy-threshold", f.copy_threshold)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  provenance->add_option("--classes", f.classes, "Comma-separated classes to trace")
      ->capture_default_str();
  out_opt(provenance);

  auto *report = app.add_subcommand("report", "Re-export reports and build ratio tables");
  config_opt(report);
  report->add_option("--report", f.reports, "report.json files")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  report->add_flag("--exclude-zero-wer", f.exclude_zero_wer);
  out_opt(report);

  auto *simulate = app.add_subcommand("simulate-backend",
                                      "Serve the simulator over the backend protocol");
  config_opt(simulate);
  corpus_opt(simulate);
  simulate->add_option("--sim-config", f.sim_config)->required();
  simulate->add_option("--lm", f.lm)->capture_default_str();
  simulate->add_option("--lm-train", f.lm_train);
  simulate->add_option("--listen", f.listen, "host:port (default: stdin/stdout)");

  auto *synth = app.add_subcommand("synth-corpus", "Write a synthetic corpus");
  config_opt(synth);
  synth->add_option("--utterances", f.utterances)->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--pool-size", f.pool_size)->capture_default_str();
  synth->add_option("--noisy-onset-fraction", f.noisy_onset_fraction)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--name", f.name)->capture_default_str();
  synth->add_option("--seed", f.seed)->capture_default_str();
  out_opt(synth);

  try {
    std::vector<std::string> args = ExpandConfig(raw_args);
    std::vector<char *> argv;
    for (std::string &a : args) argv.push_back(a.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
      int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    if (evaluate->parsed()) return CmdEvaluate(f, out);
    if (detect->parsed()) return CmdDetect(f, out);
    if (perturb->parsed()) return CmdPerturb(f, out);
    if (corrupt->parsed()) return CmdCorrupt(f, out);
    if (provenance->parsed()) return CmdProvenance(f, out);
    if (report->parsed()) return CmdReport(f, out);
    if (simulate->parsed()) return CmdSimulateBackend(f, err);
    if (synth->parsed()) return CmdSynthCorpus(f, out);
    return kExitUsage;
  } catch (const Error &e) {
    err << "halscope: " << e.what() << '\n';
    return kExitRunError;
  } catch (const std::exception &e) {
    err << "halscope: " << e.what() << '\n';
    return kExitRunError;
  }
}

}  // namespace halscope
