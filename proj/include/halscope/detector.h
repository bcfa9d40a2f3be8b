// include/halscope/detector.h

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


// Perturbation-based hallucination detection over a corpus.
//
// Every utterance is transcribed and scored (natural phase). Utterances whose
// natural WER is strictly below the WER threshold are perturbed, transcribed
// again and rescored (perturbed phase). An output counts as a hallucination
// when WER > t_wer, cos < t_cos and ppl < t_ppl; each phase's rate is the
// hallucination count over the utterances scored in that phase, and the
// susceptibility score is natural rate minus perturbed rate.

#ifndef HALSCOPE_DETECTOR_H_
#define HALSCOPE_DETECTOR_H_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halscope/alignment.h"
#include "halscope/backend.h"
#include "halscope/corpus.h"
#include "halscope/language_model.h"
#include "halscope/perturb.h"
#include "halscope/taxonomy.h"
#include "halscope/vectorizer.h"

namespace halscope {

enum class Phase { kNatural, kPerturbed };

std::string_view PhaseName(Phase p);
Phase ParsePhase(std::string_view s);

struct EvalRecord {
  std::string id;
  std::string reference;
  std::string hypothesis;
  Phase phase = Phase::kNatural;
  Alignment alignment;
  double wer = 0.0;
  /// Computed for WER above the threshold, or for every record when
  /// ScoringConfig::score_all is set.
  std::optional<double> cos;
  std::optional<double> ppl;
  bool oscillating = false;
  ErrorClass error_class = ErrorClass::kClean;
  /// Set for utterances that could not be transcribed or scored; such
  /// records carry no metrics and are left out of all counts.
  std::optional<std::string> error;

  bool failed() const { return error.has_value(); }
};

struct ScoringConfig {
  Thresholds thresholds;
  OscillationConfig oscillation;
  bool score_all = false;
};

/// Turns (utterance, hypothesis) into a scored record. Thread-safe if the
/// perplexity provider is.
class RecordScorer {
 public:
  RecordScorer(const Vectorizer &vectorizer, const PerplexityProvider &lm,
               ScoringConfig config);

  EvalRecord Score(const Utterance &utterance, const std::string &hypothesis,
                   Phase phase) const;
  EvalRecord Failed(const Utterance &utterance, std::string error,
                    Phase phase) const;

  const ScoringConfig &config() const { return config_; }

 private:
  const Vectorizer &vectorizer_;
  const PerplexityProvider &lm_;
  ScoringConfig config_;
};

/// One backend handle per worker thread.
class BackendPool {
 public:
  BackendPool(const BackendFactory &factory, std::size_t handles);
  explicit BackendPool(std::vector<std::unique_ptr<Backend>> handles);

  std::size_t size() const { return handles_.size(); }
  Backend &at(std::size_t i) { return *handles_.at(i); }

 private:
  std::vector<std::unique_ptr<Backend>> handles_;
};

struct RunOptions {
  /// Requests sent to a handle per round trip.
  std::size_t batch_size = 8;
};

/// One record per utterance, in corpus order. Per-utterance failures become
/// failed records; BackendUnreachable and ProtocolViolation abort the run.
std::vector<EvalRecord> EvaluateCorpus(BackendPool &pool, const Corpus &corpus,
                                       const AudioSource &audio,
                                       const RecordScorer &scorer,
                                       Phase phase = Phase::kNatural,
                                       const RunOptions &options = {});

/// Applies |noise| to every waveform of |base|; the noise seed of each
/// utterance is derived from noise.seed and the utterance id.
AudioSource PerturbedAudioSource(AudioSource base, NoiseSpec noise);

/// WER > t_wer, cos < t_cos and ppl < t_ppl.
bool IsHallucination(const EvalRecord &record, const Thresholds &thresholds);

struct PhaseSummary {
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  std::size_t hallucinations = 0;
  std::array<std::size_t, kAllErrorClasses.size()> class_counts{};
  double halluc_rate = 0.0;
  double mean_wer = 0.0;
  double corpus_wer = 0.0;

  std::size_t count(ErrorClass c) const {
    return class_counts[static_cast<std::size_t>(c)];
  }
};

PhaseSummary Summarize(const std::vector<EvalRecord> &records,
                       const Thresholds &thresholds);

double SusceptibilityScore(double natural_rate, double perturbed_rate);

struct DetectionReport {
  std::string model;
  std::string dataset;
  ScoringConfig scoring;
  NoiseSpec noise;
  std::vector<EvalRecord> natural_records;
  std::vector<EvalRecord> perturbed_records;
  PhaseSummary natural;
  PhaseSummary perturbed;
  /// Natural records with WER exactly at the threshold: neither perturbed
  /// nor counted as natural errors.
  std::size_t boundary_count = 0;
  double susceptibility_score = 0.0;

  /// Recomputes the summaries and score from the records.
  void Finalize();
};

struct DetectOptions {
  ScoringConfig scoring;
  NoiseSpec noise;
  RunOptions run;
  std::string model_name = "model";
  std::string dataset_name;
};

DetectionReport Detect(BackendPool &pool, const Corpus &corpus,
                       const AudioSource &audio, const Vectorizer &vectorizer,
                       const PerplexityProvider &lm,
                       const DetectOptions &options);

}  // namespace halscope

#endif  // HALSCOPE_DETECTOR_H_
