// include/halscope/simulator.h

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


// Deterministic stand-in for a speech recognizer. It knows the spoken text of
// each utterance and degrades it as a function of the audio:
//
//   onset energy  E0 = max(0, MS(first onset_seconds) - MS(rest))
//   hallucinate   iff E0 > energy_threshold and u < p_halluc; the output is a
//                 sentence from the memorized pool
//   otherwise     each word is confused with probability
//                 min(1, base_confusion_rate + noise_sensitivity * MS(all)),
//                 for at most floor(max_confusion_fraction * words) words,
//                 then with probability p_osc a 1-3 word n-gram is repeated
//                 3-8 more times at the end
//
// MS is the mean square amplitude. All randomness is seeded from the config
// seed, the waveform bytes and the spoken text, so identical audio always
// yields the identical transcript.

#ifndef HALSCOPE_SIMULATOR_H_
#define HALSCOPE_SIMULATOR_H_

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "halscope/backend.h"
#include "halscope/corpus.h"
#include "halscope/protocol.h"

namespace halscope {

struct SimBackendConfig {
  std::uint64_t seed = 0;
  double base_confusion_rate = 0.0;
  double noise_sensitivity = 0.0;
  double p_halluc = 0.0;
  double p_osc = 0.0;
  double energy_threshold = 0.02;
  double onset_seconds = 1.0;
  double max_confusion_fraction = 0.5;
  std::vector<std::string> memorized_pool;

  /// Throws InvalidConfig.
  void Validate() const;
};

/// YAML mapping with the field names above. "memorized_pool_file" names a
/// text file (one sentence per line, relative to the config file).
/// Throws MissingFile / InvalidConfig.
SimBackendConfig LoadSimConfig(const std::string &path);

/// What the simulator did to one utterance.
struct SimTrace {
  double onset_energy = 0.0;
  double mean_square = 0.0;
  double confusion_rate = 0.0;
  bool hallucinated = false;
  std::size_t pool_index = 0;
  std::size_t substitutions = 0;
  bool oscillated = false;
  std::size_t osc_ngram_len = 0;
  std::size_t osc_copies = 0;
};

struct SimOutput {
  std::string text;
  SimTrace trace;
};

SimOutput SimTranscribe(const SimBackendConfig &config, const Waveform &audio,
                        const std::string &spoken_text);

/// Onset-versus-remainder energy contrast used for the hallucination trigger.
double OnsetEnergy(const Waveform &audio, double onset_seconds);

/// A plausible mishearing of |word|, never equal to it.
std::string ConfuseWord(const std::string &word, std::mt19937_64 &rng);

/// Spoken text per utterance id. Ids of injected label-noise copies
/// ("<id>#noise<i>") resolve to their source utterance.
class SpokenTextIndex {
 public:
  explicit SpokenTextIndex(const Corpus &corpus);
  /// Throws BackendError for unknown ids.
  const std::string &Lookup(const std::string &utterance_id) const;
  /// Null if no utterance has this audio path.
  const std::string *FindByPath(const std::string &audio_path) const;

 private:
  std::unordered_map<std::string, std::string> by_id_;
  std::unordered_map<std::string, std::string> by_path_;
};

class SimulatedBackend : public Backend {
 public:
  SimulatedBackend(SimBackendConfig config, std::shared_ptr<const SpokenTextIndex> index);

  std::vector<TranscriptionResult> TranscribeBatch(
      std::span<const TranscriptionRequest> requests) override;
  std::string Describe() const override { return "sim"; }

 private:
  SimBackendConfig config_;
  std::shared_ptr<const SpokenTextIndex> index_;
};

/// Protocol handler answering transcription requests with the simulator and,
/// when |lm| is set, "ppl" requests. Audio is taken from the request
/// ("pcm_f32_base64" or "audio_path") and the spoken text from
/// "utterance_id", falling back to the audio path.
RequestHandler MakeSimRequestHandler(SimBackendConfig config,
                                     std::shared_ptr<const SpokenTextIndex> index,
                                     std::shared_ptr<const PerplexityProvider> lm);

}  // namespace halscope

#endif  // HALSCOPE_SIMULATOR_H_
