// include/halscope/mt_metrics.h

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

// Overlap-based sentence metrics used alongside WER: BLEU, chrF2 and
// unigram ROUGE. All inputs are whitespace-tokenized text.

#ifndef HALSCOPE_MT_METRICS_H_
#define HALSCOPE_MT_METRICS_H_

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace halscope {

constexpr int kBleuMaxOrder = 4;
constexpr int kChrfMaxOrder = 6;
constexpr double kChrfBeta = 2.0;

/// Sufficient statistics for BLEU on one segment or a whole corpus.
struct BleuStats {
  std::array<long, kBleuMaxOrder> hits{};
  std::array<long, kBleuMaxOrder> totals{};
  long hyp_len = 0;
  long ref_len = 0;

  BleuStats &operator+=(const BleuStats &o);
};

BleuStats ComputeBleuStats(std::string_view ref, std::string_view hyp);

/// Sentence BLEU in [0, 100]: clipped n-gram precision up to 4-grams,
/// brevity penalty, and add-one smoothing of hits and totals for n >= 2.
/// An empty hypothesis scores 0.
double SentenceBleu(std::string_view ref, std::string_view hyp);

/// Unsmoothed BLEU from aggregated statistics (any zero precision gives 0).
double CorpusBleu(const BleuStats &stats);

struct ChrfStats {
  std::array<long, kChrfMaxOrder> hyp{};
  std::array<long, kChrfMaxOrder> ref{};
  std::array<long, kChrfMaxOrder> match{};

  ChrfStats &operator+=(const ChrfStats &o);
};

/// Character n-grams ignore whitespace.
ChrfStats ComputeChrfStats(std::string_view ref, std::string_view hyp);

/// chrF with beta = 2: per-order F-beta from character n-gram precision and
/// recall, averaged over the orders present in both sides. Returns [0, 100].
double ChrfScore(const ChrfStats &stats);
double SentenceChrf2(std::string_view ref, std::string_view hyp);

/// Unigram-overlap F1 in [0, 1].
double Rouge1(std::string_view ref, std::string_view hyp);

}  // namespace halscope

#endif  // HALSCOPE_MT_METRICS_H_
