// src/simulator.cc

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


#include "halscope/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>

#include <yaml-cpp/yaml.h>

#include "halscope/errors.h"
#include "halscope/text.h"

namespace halscope {

namespace {

double Uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t UniformIndex(std::mt19937_64 &rng, std::size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

const std::unordered_map<std::string, std::string> &ConfusionTable() {
  static const auto *table = [] {
    static const char *kPairs[][2] = {
        {"there", "their"},   {"to", "two"},        {"for", "four"},
        {"right", "write"},   {"know", "no"},       {"see", "sea"},
        {"hear", "here"},     {"by", "buy"},        {"one", "won"},
        {"new", "knew"},      {"whole", "hole"},    {"week", "weak"},
        {"meet", "meat"},     {"road", "rode"},     {"sun", "son"},
        {"flower", "flour"},  {"mail", "male"},     {"pair", "pear"},
        {"peace", "piece"},   {"plain", "plane"},   {"sail", "sale"},
        {"tail", "tale"},     {"wait", "weight"},   {"wood", "would"},
        {"night", "knight"},  {"blue", "blew"},     {"cell", "sell"},
        {"dear", "deer"},     {"fair", "fare"},     {"horse", "hoarse"},
        {"candle", "handle"}, {"letter", "ladder"}, {"bridge", "ridge"},
        {"river", "liver"},   {"castle", "hassle"}, {"window", "widow"},
        {"quiet", "quite"},   {"bright", "bride"},  {"watched", "washed"},
        {"carried", "married"}, {"crossed", "cost"}, {"passed", "past"},
        {"old", "hold"},      {"cold", "gold"},     {"the", "a"},
    };
    auto *t = new std::unordered_map<std::string, std::string>;
    for (const auto &p : kPairs) {
      t->emplace(p[0], p[1]);
      t->emplace(p[1], p[0]);
    }
    return t;
  }();
  return *table;
}

// Letters that are easy to mishear for one another.
const char *SoundGroup(char c) {
  static const char *kGroups[] = {"bp", "dt", "gk", "fv", "sz", "mn", "lr",
                                  "aeiou"};
  for (const char *g : kGroups)
    if (std::strchr(g, c)) return g;
  return nullptr;
}

std::uint64_t UtteranceSeed(std::uint64_t seed, const Waveform &audio,
                            const std::string &spoken_text) {
  std::string_view bytes(reinterpret_cast<const char *>(audio.samples.data()),
                         audio.samples.size() * sizeof(float));
  std::uint64_t h = Fnv1a64(bytes);
  h = Fnv1a64(std::to_string(audio.sample_rate), h);
  h = Fnv1a64(spoken_text, h);
  return seed ^ h;
}

double NonNegative(const YAML::Node &node, const char *key) {
  double v = node.as<double>();
  if (!(v >= 0.0) || !std::isfinite(v))
    throw Error(Errc::kInvalidConfig, std::string(key) + " must be >= 0");
  return v;
}

}  // namespace

void SimBackendConfig::Validate() const {
  auto probability = [](double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw Error(Errc::kInvalidConfig, std::string(name) + " must be in [0, 1]");
  };
  probability(base_confusion_rate, "base_confusion_rate");
  probability(p_halluc, "p_halluc");
  probability(p_osc, "p_osc");
  probability(max_confusion_fraction, "max_confusion_fraction");
  if (!(noise_sensitivity >= 0.0) || !std::isfinite(noise_sensitivity))
    throw Error(Errc::kInvalidConfig, "noise_sensitivity must be >= 0");
  if (!(energy_threshold >= 0.0))
    throw Error(Errc::kInvalidConfig, "energy_threshold must be >= 0");
  if (!(onset_seconds > 0.0))
    throw Error(Errc::kInvalidConfig, "onset_seconds must be > 0");
  if (p_halluc > 0.0 && memorized_pool.empty())
    throw Error(Errc::kInvalidConfig, "p_halluc > 0 needs a memorized_pool");
}

SimBackendConfig LoadSimConfig(const std::string &path) {
  if (!std::filesystem::exists(path))
    throw Error(Errc::kMissingFile, path);
  SimBackendConfig c;
  try {
    YAML::Node root = YAML::LoadFile(path);
    if (!root.IsMap())
      throw Error(Errc::kInvalidConfig, path + ": expected a mapping");
    for (const auto &kv : root) {
      const std::string key = kv.first.as<std::string>();
      const YAML::Node &v = kv.second;
      if (key == "seed") c.seed = v.as<std::uint64_t>();
      else if (key == "base_confusion_rate") c.base_confusion_rate = v.as<double>();
      else if (key == "noise_sensitivity") c.noise_sensitivity = NonNegative(v, "noise_sensitivity");
      else if (key == "p_halluc") c.p_halluc = v.as<double>();
      else if (key == "p_osc") c.p_osc = v.as<double>();
      else if (key == "energy_threshold") c.energy_threshold = NonNegative(v, "energy_threshold");
      else if (key == "onset_seconds") c.onset_seconds = v.as<double>();
      else if (key == "max_confusion_fraction") c.max_confusion_fraction = v.as<double>();
      else if (key == "memorized_pool") {
        for (const auto &s : v) c.memorized_pool.push_back(NormalizeText(s.as<std::string>()));
      } else if (key == "memorized_pool_file") {
        std::filesystem::path file = v.as<std::string>();
        if (file.is_relative())
          file = std::filesystem::path(path).parent_path() / file;
        std::ifstream in(file);
        if (!in) throw Error(Errc::kMissingFile, file.string());
        std::string line;
        while (std::getline(in, line)) {
          std::string norm = NormalizeText(line);
          if (!norm.empty()) c.memorized_pool.push_back(std::move(norm));
        }
      } else {
        throw Error(Errc::kInvalidConfig, path + ": unknown key '" + key + "'");
      }
    }
  } catch (const YAML::Exception &e) {
    throw Error(Errc::kInvalidConfig, path + ": " + e.what());
  }
  c.Validate();
  return c;
}

double OnsetEnergy(const Waveform &audio, double onset_seconds) {
  const std::size_t k = std::min(
      audio.samples.size(),
      static_cast<std::size_t>(std::llround(onset_seconds * audio.sample_rate)));
  std::span<const float> all(audio.samples);
  double onset = MeanSquare(all.first(k));
  double rest = MeanSquare(all.subspan(k));
  return std::max(0.0, onset - rest);
}

std::string ConfuseWord(const std::string &word, std::mt19937_64 &rng) {
  const auto &table = ConfusionTable();
  if (auto it = table.find(word); it != table.end()) return it->second;
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (SoundGroup(word[i])) positions.push_back(i);
  if (positions.empty()) return word + "s";
  std::string out = word;
  std::size_t pos = positions[UniformIndex(rng, positions.size())];
  std::string group = SoundGroup(word[pos]);
  group.erase(group.find(word[pos]), 1);
  out[pos] = group[UniformIndex(rng, group.size())];
  return out;
}

SimOutput SimTranscribe(const SimBackendConfig &config, const Waveform &audio,
                        const std::string &spoken_text) {
  SimOutput out;
  SimTrace &trace = out.trace;
  std::mt19937_64 rng(UtteranceSeed(config.seed, audio, spoken_text));
  // The first two draws are made unconditionally so that for a fixed
  // utterance the hallucination decision is monotone in p_halluc.
  const double u_halluc = Uniform01(rng);
  const std::size_t pool_draw =
      config.memorized_pool.empty() ? 0
                                    : UniformIndex(rng, config.memorized_pool.size());

  trace.onset_energy = OnsetEnergy(audio, config.onset_seconds);
  trace.mean_square = MeanSquare(audio.samples);
  if (trace.onset_energy > config.energy_threshold &&
      u_halluc < config.p_halluc && !config.memorized_pool.empty()) {
    trace.hallucinated = true;
    trace.pool_index = pool_draw;
    out.text = config.memorized_pool[pool_draw];
    return out;
  }

  std::vector<std::string> words = Tokenize(NormalizeText(spoken_text));
  trace.confusion_rate = std::min(
      1.0, config.base_confusion_rate + config.noise_sensitivity * trace.mean_square);
  const auto cap = static_cast<std::size_t>(
      std::floor(config.max_confusion_fraction * static_cast<double>(words.size())));
  for (std::string &w : words) {
    if (Uniform01(rng) < trace.confusion_rate && trace.substitutions < cap) {
      w = ConfuseWord(w, rng);
      ++trace.substitutions;
    }
  }

  if (!words.empty() && Uniform01(rng) < config.p_osc) {
    const std::size_t len = 1 + UniformIndex(rng, std::min<std::size_t>(3, words.size()));
    const std::size_t start = UniformIndex(rng, words.size() - len + 1);
    const std::size_t copies = 3 + UniformIndex(rng, 6);
    std::vector<std::string> gram(words.begin() + start, words.begin() + start + len);
    for (std::size_t c = 0; c < copies; ++c)
      words.insert(words.end(), gram.begin(), gram.end());
    trace.oscillated = true;
    trace.osc_ngram_len = len;
    trace.osc_copies = copies;
  }
  out.text = JoinTokens(words);
  return out;
}

SpokenTextIndex::SpokenTextIndex(const Corpus &corpus) {
  for (const Utterance &u : corpus.utterances()) {
    by_id_.emplace(u.id, u.reference);
    by_path_.emplace(u.audio_path, u.reference);
  }
}

const std::string &SpokenTextIndex::Lookup(const std::string &utterance_id) const {
  std::string id = utterance_id;
  if (auto pos = id.rfind("#noise"); pos != std::string::npos) id.resize(pos);
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw Error(Errc::kBackendError, "unknown utterance " + utterance_id);
  return it->second;
}

const std::string *SpokenTextIndex::FindByPath(const std::string &audio_path) const {
  auto it = by_path_.find(audio_path);
  return it == by_path_.end() ? nullptr : &it->second;
}

SimulatedBackend::SimulatedBackend(SimBackendConfig config,
                                   std::shared_ptr<const SpokenTextIndex> index)
    : config_(std::move(config)), index_(std::move(index)) {
  config_.Validate();
}

std::vector<TranscriptionResult> SimulatedBackend::TranscribeBatch(
    std::span<const TranscriptionRequest> requests) {
  std::vector<TranscriptionResult> out;
  out.reserve(requests.size());
  for (const TranscriptionRequest &r : requests) {
    TranscriptionResult result;
    try {
      const std::string &spoken = index_->Lookup(r.utterance_id);
      Waveform loaded;
      const Waveform *audio = r.audio;
      if (!audio) {
        loaded = LoadAudio(r.audio_path);
        audio = &loaded;
      }
      result.text = SimTranscribe(config_, *audio, spoken).text;
    } catch (const Error &e) {
      result.error = e.what();
    }
    out.push_back(std::move(result));
  }
  return out;
}

RequestHandler MakeSimRequestHandler(
    SimBackendConfig config, std::shared_ptr<const SpokenTextIndex> index,
    std::shared_ptr<const PerplexityProvider> lm) {
  config.Validate();
  return [config = std::move(config), index = std::move(index),
          lm = std::move(lm)](const nlohmann::json &req) -> nlohmann::json {
    nlohmann::json resp = nlohmann::json::object();
    const std::string op = req.value("op", "transcribe");
    if (op == "ppl") {
      if (!lm) throw Error(Errc::kBackendError, "no language model loaded");
      std::vector<std::string> tokens =
          Tokenize(NormalizeText(req.value("text", "")));
      resp["ppl"] = Perplexity(tokens, *lm);
      return resp;
    }
    if (op != "transcribe") throw Error(Errc::kBackendError, "unknown op " + op);
    Waveform audio;
    if (req.contains("pcm_f32_base64")) {
      audio.samples = DecodePcm(req["pcm_f32_base64"].get<std::string>());
      audio.sample_rate = req.value("sample_rate", 16000);
    } else if (req.contains("audio_path")) {
      audio = LoadAudio(req["audio_path"].get<std::string>());
    } else {
      throw Error(Errc::kProtocolViolation, "request carries no audio");
    }
    const std::string *spoken = nullptr;
    if (req.contains("utterance_id"))
      spoken = &index->Lookup(req["utterance_id"].get<std::string>());
    else if (req.contains("audio_path"))
      spoken = index->FindByPath(req["audio_path"].get<std::string>());
    if (!spoken) throw Error(Errc::kBackendError, "cannot identify utterance");
    resp["transcript"] = SimTranscribe(config, audio, *spoken).text;
    return resp;
  };
}

}  // namespace halscope
