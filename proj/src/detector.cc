// src/detector.cc

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


#include "halscope/detector.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "halscope/errors.h"
#include "halscope/text.h"

namespace halscope {

std::string_view PhaseName(Phase p) {
  return p == Phase::kNatural ? "natural" : "perturbed";
}

Phase ParsePhase(std::string_view s) {
  if (s == "natural") return Phase::kNatural;
  if (s == "perturbed") return Phase::kPerturbed;
  throw Error(Errc::kInvalidConfig, "unknown phase: " + std::string(s));
}

RecordScorer::RecordScorer(const Vectorizer &vectorizer,
                           const PerplexityProvider &lm, ScoringConfig config)
    : vectorizer_(vectorizer), lm_(lm), config_(std::move(config)) {
  config_.thresholds.Validate();
  config_.oscillation.Validate();
}

EvalRecord RecordScorer::Failed(const Utterance &utterance, std::string error,
                                Phase phase) const {
  EvalRecord r;
  r.id = utterance.id;
  r.reference = utterance.reference;
  r.phase = phase;
  r.error = std::move(error);
  return r;
}

EvalRecord RecordScorer::Score(const Utterance &utterance,
                               const std::string &hypothesis,
                               Phase phase) const {
  const Thresholds &th = config_.thresholds;
  EvalRecord r;
  r.id = utterance.id;
  r.reference = NormalizeText(utterance.reference);
  r.hypothesis = NormalizeText(hypothesis);
  r.phase = phase;
  std::vector<std::string> ref = Tokenize(r.reference);
  std::vector<std::string> hyp = Tokenize(r.hypothesis);
  if (ref.empty()) {
    r.error = "EmptyReference";
    return r;
  }
  r.alignment = Align(ref, hyp);
  r.wer = WordErrorRate(r.alignment);
  r.oscillating = DetectOscillation(hyp, config_.oscillation).found;

  const bool erroneous = r.wer > th.wer;
  if (erroneous || config_.score_all) {
    r.cos = CosineSimilarity(vectorizer_.Transform(hyp), vectorizer_.Transform(ref));
    if (!hyp.empty()) {
      try {
        r.ppl = Perplexity(hyp, lm_);
      } catch (const Error &e) {
        if (e.code() != Errc::kProviderFailure) throw;
        r.error = e.what();
        return r;
      }
    }
  }
  if (!erroneous) {
    r.error_class = ErrorClass::kClean;
  } else if (!r.ppl) {
    // Nothing was recognized: not fluent output, so not a hallucination.
    r.error_class = r.oscillating ? ErrorClass::kOscillation
                                  : ErrorClass::kDisfluentError;
  } else {
    r.error_class = Classify(r.wer, *r.cos, *r.ppl, r.oscillating, th);
  }
  return r;
}

BackendPool::BackendPool(const BackendFactory &factory, std::size_t handles) {
  if (handles == 0) throw Error(Errc::kInvalidConfig, "need at least one backend handle");
  for (std::size_t i = 0; i < handles; ++i) handles_.push_back(factory());
}

BackendPool::BackendPool(std::vector<std::unique_ptr<Backend>> handles)
    : handles_(std::move(handles)) {
  if (handles_.empty())
    throw Error(Errc::kInvalidConfig, "need at least one backend handle");
}

namespace {

// Transcribes and scores |items| (indices into |corpus|) into |out|.
void RunBatches(BackendPool &pool, const Corpus &corpus,
                const std::vector<std::size_t> &items,
                const AudioSource &audio, const RecordScorer &scorer,
                Phase phase, const RunOptions &options,
                std::vector<EvalRecord> &out) {
  const std::size_t batch = std::max<std::size_t>(1, options.batch_size);
  const std::size_t batches = (items.size() + batch - 1) / batch;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto worker = [&](Backend &backend) {
    try {
      for (;;) {
        if (abort) return;
        const std::size_t b = next++;
        if (b >= batches) return;
        const std::size_t lo = b * batch;
        const std::size_t hi = std::min(items.size(), lo + batch);
        std::vector<Waveform> waves(hi - lo);
        std::vector<TranscriptionRequest> requests;
        std::vector<std::size_t> slots;
        for (std::size_t k = lo; k < hi; ++k) {
          const Utterance &u = corpus[items[k]];
          try {
            waves[k - lo] = audio(u);
          } catch (const Error &e) {
            out[k] = scorer.Failed(u, e.what(), phase);
            continue;
          }
          TranscriptionRequest req;
          req.utterance_id = u.id;
          req.audio = &waves[k - lo];
          req.audio_path = u.audio_path;
          requests.push_back(std::move(req));
          slots.push_back(k);
        }
        if (requests.empty()) continue;
        std::vector<TranscriptionResult> results = backend.TranscribeBatch(requests);
        if (results.size() != requests.size())
          throw Error(Errc::kProtocolViolation, backend.Describe() +
                                                    ": wrong number of results");
        for (std::size_t j = 0; j < slots.size(); ++j) {
          const Utterance &u = corpus[items[slots[j]]];
          out[slots[j]] = results[j].ok()
                              ? scorer.Score(u, results[j].text, phase)
                              : scorer.Failed(u, *results[j].error, phase);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!first_error) first_error = std::current_exception();
      abort = true;
    }
  };

  const std::size_t workers = std::min(pool.size(), std::max<std::size_t>(1, batches));
  if (workers <= 1) {
    worker(pool.at(0));
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w)
      threads.emplace_back(worker, std::ref(pool.at(w)));
    for (auto &t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<EvalRecord> EvaluateCorpus(BackendPool &pool, const Corpus &corpus,
                                       const AudioSource &audio,
                                       const RecordScorer &scorer, Phase phase,
                                       const RunOptions &options) {
  std::vector<std::size_t> items(corpus.size());
  for (std::size_t i = 0; i < items.size(); ++i) items[i] = i;
  std::vector<EvalRecord> out(items.size());
  RunBatches(pool, corpus, items, audio, scorer, phase, options, out);
  return out;
}

AudioSource PerturbedAudioSource(AudioSource base, NoiseSpec noise) {
  noise.Validate();
  return [base = std::move(base), noise](const Utterance &u) {
    NoiseSpec spec = noise;
    spec.seed = DeriveSeed(noise.seed, u.id);
    return Perturb(base(u), spec);
  };
}

bool IsHallucination(const EvalRecord &r, const Thresholds &th) {
  return !r.failed() && r.wer > th.wer && r.cos && r.ppl && *r.cos < th.cos &&
         *r.ppl < th.ppl;
}

PhaseSummary Summarize(const std::vector<EvalRecord> &records,
                       const Thresholds &thresholds) {
  PhaseSummary s;
  double wer_sum = 0.0;
  std::size_t errors = 0, ref_words = 0;
  for (const EvalRecord &r : records) {
    if (r.failed()) {
      ++s.failed;
      continue;
    }
    ++s.evaluated;
    ++s.class_counts[static_cast<std::size_t>(r.error_class)];
    if (IsHallucination(r, thresholds)) ++s.hallucinations;
    wer_sum += r.wer;
    errors += r.alignment.Errors();
    ref_words += r.alignment.ref_len;
  }
  if (s.evaluated > 0) {
    s.halluc_rate = static_cast<double>(s.hallucinations) / s.evaluated;
    s.mean_wer = wer_sum / s.evaluated;
  }
  if (ref_words > 0) s.corpus_wer = 100.0 * errors / ref_words;
  return s;
}

double SusceptibilityScore(double natural_rate, double perturbed_rate) {
  return natural_rate - perturbed_rate;
}

void DetectionReport::Finalize() {
  natural = Summarize(natural_records, scoring.thresholds);
  perturbed = Summarize(perturbed_records, scoring.thresholds);
  boundary_count = 0;
  for (const EvalRecord &r : natural_records)
    if (!r.failed() && r.wer == scoring.thresholds.wer) ++boundary_count;
  susceptibility_score =
      SusceptibilityScore(natural.halluc_rate, perturbed.halluc_rate);
}

DetectionReport Detect(BackendPool &pool, const Corpus &corpus,
                       const AudioSource &audio, const Vectorizer &vectorizer,
                       const PerplexityProvider &lm,
                       const DetectOptions &options) {
  options.noise.Validate();
  RecordScorer scorer(vectorizer, lm, options.scoring);
  DetectionReport report;
  report.model = options.model_name;
  report.dataset = options.dataset_name.empty() ? corpus.name() : options.dataset_name;
  report.scoring = scorer.config();
  report.noise = options.noise;
  report.natural_records =
      EvaluateCorpus(pool, corpus, audio, scorer, Phase::kNatural, options.run);

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < report.natural_records.size(); ++i) {
    const EvalRecord &r = report.natural_records[i];
    if (!r.failed() && r.wer < options.scoring.thresholds.wer) eligible.push_back(i);
  }
  report.perturbed_records.resize(eligible.size());
  AudioSource perturbed = PerturbedAudioSource(audio, options.noise);
  RunBatches(pool, corpus, eligible, perturbed, scorer, Phase::kPerturbed,
             options.run, report.perturbed_records);
  report.Finalize();
  return report;
}

}  // namespace halscope
