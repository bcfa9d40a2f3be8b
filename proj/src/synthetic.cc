// src/synthetic.cc

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


#include "halscope/synthetic.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "halscope/errors.h"
#include "halscope/perturb.h"
#include "halscope/text.h"

namespace halscope {

namespace {

struct Lexicon {
  std::vector<std::string> det, adj, noun, verb, prep, adv;

  const std::vector<std::string> &Slot(char c) const {
    switch (c) {
      case 'D': return det;
      case 'A': return adj;
      case 'N': return noun;
      case 'V': return verb;
      case 'P': return prep;
      default: return adv;
    }
  }
};

const Lexicon &CorpusLexicon() {
  static const Lexicon lex{
      {"the", "a", "this", "that", "every", "some"},
      {"quiet", "bright", "old", "young", "narrow", "heavy", "gentle",
       "silver", "distant", "hidden", "golden", "broken", "tired", "clever",
       "sudden", "empty", "ancient", "wooden", "frozen", "patient"},
      {"captain", "river", "window", "garden", "letter", "village", "doctor",
       "horse", "candle", "mountain", "sailor", "forest", "kitchen", "bridge",
       "lantern", "merchant", "meadow", "castle", "soldier", "harbor",
       "carriage", "orchard", "teacher", "valley", "blanket", "chimney",
       "farmer", "island", "basket", "pocket"},
      {"watched", "carried", "followed", "opened", "crossed", "painted",
       "visited", "repaired", "noticed", "guarded", "answered", "lifted",
       "reached", "cleaned", "passed", "signed", "hunted", "counted",
       "finished", "moved"},
      {"near", "behind", "beyond", "across", "under", "beside"},
      {"slowly", "quickly", "softly", "warmly", "rarely", "boldly", "calmly",
       "gladly"}};
  return lex;
}

const Lexicon &PoolLexicon() {
  static const Lexicon lex{
      {"his", "her", "our", "their", "my", "your"},
      {"scarlet", "humble", "cheerful", "lonely", "noble", "fragile",
       "crimson", "weary", "eager", "solemn", "rustic", "velvet", "curious",
       "mellow", "stern"},
      {"annabel", "rachel", "cradle", "shepherd", "cottage", "violin",
       "pilgrim", "orchid", "falcon", "sparrow", "chapel", "fountain",
       "tapestry", "goblet", "parchment", "saddle", "lute", "cloak", "banner",
       "meadowlark"},
      {"rocked", "praised", "mended", "sheltered", "whispered", "embraced",
       "polished", "gathered", "blessed", "trimmed", "wove", "fetched",
       "admired", "stitched"},
      {"within", "beneath", "upon", "toward"},
      {"faintly", "tenderly", "proudly", "sadly", "merrily", "silently"}};
  return lex;
}

// D determiner, A adjective, N noun, V verb, P preposition, R adverb.
constexpr const char *kTemplates[] = {
    "DANVDN", "DNVDANPDN", "DANRVDN", "DNVDNPDAN",
    "DNRVDAN", "DANVDNPDN", "DNVDNR", "DANVDAN",
};

std::size_t Draw(std::mt19937_64 &rng, std::size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

std::string Sentence(const Lexicon &lex, std::mt19937_64 &rng) {
  const char *tpl = kTemplates[Draw(rng, std::size(kTemplates))];
  std::vector<std::string> words;
  for (const char *c = tpl; *c; ++c) {
    const auto &slot = lex.Slot(*c);
    words.push_back(slot[Draw(rng, slot.size())]);
  }
  return JoinTokens(words);
}

std::vector<std::string> Flatten(const Lexicon &lex) {
  std::vector<std::string> out;
  for (const auto *v : {&lex.det, &lex.adj, &lex.noun, &lex.verb, &lex.prep, &lex.adv})
    out.insert(out.end(), v->begin(), v->end());
  return out;
}

}  // namespace

std::vector<std::string> CorpusVocabulary() { return Flatten(CorpusLexicon()); }
std::vector<std::string> PoolVocabulary() { return Flatten(PoolLexicon()); }

Waveform SynthesizeWords(std::span<const std::string> words,
                         const SyntheticConfig &config) {
  const double kPi = 3.14159265358979323846;
  const auto word_n = static_cast<std::size_t>(
      std::llround(config.word_seconds * config.sample_rate));
  const auto gap_n = static_cast<std::size_t>(
      std::llround(config.gap_seconds * config.sample_rate));
  Waveform w;
  w.sample_rate = config.sample_rate;
  w.samples.reserve(words.size() * (word_n + gap_n) + gap_n);
  w.samples.insert(w.samples.end(), gap_n, 0.0f);
  for (const std::string &word : words) {
    const double freq = 200.0 + static_cast<double>(Fnv1a64(word) % 1800);
    for (std::size_t i = 0; i < word_n; ++i) {
      const double t = static_cast<double>(i) / config.sample_rate;
      const double env = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (word_n - 1));
      w.samples.push_back(static_cast<float>(
          config.speech_amplitude * env * std::sin(2.0 * kPi * freq * t)));
    }
    w.samples.insert(w.samples.end(), gap_n, 0.0f);
  }
  return w;
}

std::vector<std::vector<std::string>> SyntheticCorpus::LmTrainingTexts() const {
  std::vector<std::vector<std::string>> texts;
  texts.reserve(corpus.size() + pool.size());
  for (const Utterance &u : corpus.utterances()) texts.push_back(Tokenize(u.reference));
  for (const std::string &s : pool) texts.push_back(Tokenize(s));
  return texts;
}

SyntheticCorpus MakeSyntheticCorpus(const SyntheticConfig &config) {
  if (config.utterances == 0)
    throw Error(Errc::kInvalidConfig, "synthetic corpus needs utterances");
  if (!(config.noisy_onset_fraction >= 0.0 && config.noisy_onset_fraction <= 1.0))
    throw Error(Errc::kInvalidConfig, "noisy_onset_fraction must be in [0, 1]");
  SyntheticCorpus out;
  std::mt19937_64 rng(config.seed);
  std::vector<Utterance> utterances;
  const int width = static_cast<int>(std::to_string(config.utterances).size());
  for (std::size_t i = 0; i < config.utterances; ++i) {
    std::ostringstream id;
    id << config.name << '-' << std::setw(width) << std::setfill('0') << i;
    Utterance u;
    u.id = id.str();
    u.audio_path = "synthetic://" + u.id;
    u.reference = Sentence(CorpusLexicon(), rng);
    utterances.push_back(std::move(u));
  }
  // Noisy onsets come from a separate stream so the sentences do not depend
  // on the fraction.
  std::mt19937_64 noise_rng(DeriveSeed(config.seed, "noisy-onset"));
  for (const Utterance &u : utterances) {
    double r = static_cast<double>(noise_rng() >> 11) * 0x1.0p-53;
    if (r < config.noisy_onset_fraction) out.noisy_onset_ids.insert(u.id);
  }
  std::mt19937_64 pool_rng(DeriveSeed(config.seed, "pool"));
  for (std::size_t i = 0; i < config.pool_size; ++i)
    out.pool.push_back(Sentence(PoolLexicon(), pool_rng));
  out.corpus = Corpus(config.name, std::move(utterances));

  auto noisy = out.noisy_onset_ids;
  out.audio = [config, noisy](const Utterance &u) {
    std::vector<std::string> words = Tokenize(u.reference);
    Waveform w = SynthesizeWords(words, config);
    if (noisy.count(u.id)) {
      NoiseSpec burst = NoiseSpec::Begin(config.onset_noise_amplitude,
                                         config.onset_noise_seconds,
                                         NoiseMode::kAdd,
                                         DeriveSeed(config.seed, u.id));
      w = InjectBegin(w, burst);
    }
    return w;
  };
  return out;
}

std::filesystem::path WriteSyntheticCorpus(const SyntheticCorpus &synthetic,
                                           const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "wav");
  std::vector<Utterance> on_disk;
  for (const Utterance &u : synthetic.corpus.utterances()) {
    Utterance d = u;
    d.audio_path = "wav/" + u.id + ".wav";
    WriteWav(dir / d.audio_path, synthetic.audio(u), SampleEncoding::kFloat32);
    on_disk.push_back(std::move(d));
  }
  const fs::path manifest = dir / (synthetic.corpus.name() + ".tsv");
  WriteManifest(manifest, Corpus(synthetic.corpus.name(), std::move(on_disk)));
  std::ofstream pool(dir / "pool.txt");
  for (const std::string &s : synthetic.pool) pool << s << '\n';
  if (!pool) throw Error(Errc::kIoError, (dir / "pool.txt").string());
  return manifest;
}

}  // namespace halscope
