// include/halscope/synthetic.h

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


// Synthetic corpora for end-to-end runs without real recordings. Sentences
// come from a small template grammar; each word is rendered as a short tone so
// waveforms have speech-like energy. The memorized pool uses a vocabulary
// disjoint from the corpus vocabulary.

#ifndef HALSCOPE_SYNTHETIC_H_
#define HALSCOPE_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "halscope/corpus.h"

namespace halscope {

struct SyntheticConfig {
  std::string name = "synthetic";
  std::size_t utterances = 500;
  std::size_t pool_size = 40;
  std::uint64_t seed = 1;
  int sample_rate = 16000;
  double word_seconds = 0.3;
  double gap_seconds = 0.05;
  double speech_amplitude = 0.1;
  /// Share of utterances recorded with a loud noise burst at the start.
  double noisy_onset_fraction = 0.0;
  double onset_noise_amplitude = 0.5;
  double onset_noise_seconds = 1.0;
};

struct SyntheticCorpus {
  /// Audio paths are "synthetic://<id>" until written to disk.
  Corpus corpus;
  std::vector<std::string> pool;
  std::unordered_set<std::string> noisy_onset_ids;
  /// Regenerates each waveform deterministically.
  AudioSource audio;

  /// References followed by the pool; training text for a language model.
  std::vector<std::vector<std::string>> LmTrainingTexts() const;
};

SyntheticCorpus MakeSyntheticCorpus(const SyntheticConfig &config);

/// Word lists for the corpus grammar and the pool grammar.
std::vector<std::string> CorpusVocabulary();
std::vector<std::string> PoolVocabulary();

/// Tone-per-word rendering of |words|.
Waveform SynthesizeWords(std::span<const std::string> words,
                         const SyntheticConfig &config);

/// Writes <dir>/wav/<id>.wav, <dir>/<name>.tsv and <dir>/pool.txt, and
/// returns the manifest path.
std::filesystem::path WriteSyntheticCorpus(const SyntheticCorpus &synthetic,
                                           const std::filesystem::path &dir);

}  // namespace halscope

#endif  // HALSCOPE_SYNTHETIC_H_
