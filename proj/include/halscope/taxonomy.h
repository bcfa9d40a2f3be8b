// include/halscope/taxonomy.h

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

#ifndef HALSCOPE_TAXONOMY_H_
#define HALSCOPE_TAXONOMY_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace halscope {

/// Decision thresholds: WER in percent, cosine similarity, perplexity.
struct Thresholds {
  double wer = 30.0;
  double cos = 0.2;
  double ppl = 200.0;

  /// Throws InvalidConfig unless wer > 0, 0 <= cos <= 1, ppl > 0.
  void Validate() const;
};

enum class ErrorClass {
  kClean,
  kPhoneticError,
  kOscillation,
  kHallucination,
  kDisfluentError,
};

inline constexpr std::array<ErrorClass, 5> kAllErrorClasses = {
    ErrorClass::kClean, ErrorClass::kPhoneticError, ErrorClass::kOscillation,
    ErrorClass::kHallucination, ErrorClass::kDisfluentError};

std::string_view ErrorClassName(ErrorClass c);
/// Inverse of ErrorClassName; nullopt for unknown names.
std::optional<ErrorClass> ParseErrorClass(std::string_view name);

struct OscillationConfig {
  int min_ngram = 1;
  int min_repeats = 3;

  void Validate() const;
};

struct OscillationMatch {
  bool found = false;
  std::vector<std::string> ngram;
  std::size_t start = 0;
  int repeats = 0;
};

/// Finds an n-gram (n >= min_ngram) repeated at least min_repeats times back
/// to back. The shortest such n-gram wins, then the earliest start; repeats
/// reports the full run length at that start.
OscillationMatch DetectOscillation(std::span<const std::string> hyp,
                                   const OscillationConfig &config = {});

/// Total over finite inputs:
///   wer <= t_wer                  -> CLEAN
///   oscillating                   -> OSCILLATION
///   cos < t_cos and ppl < t_ppl   -> HALLUCINATION
///   cos < t_cos                   -> DISFLUENT_ERROR
///   otherwise                     -> PHONETIC_ERROR
/// Throws NonFiniteInput for NaN or infinite metrics.
ErrorClass Classify(double wer, double cos, double ppl, bool oscillating,
                    const Thresholds &thresholds = {});

}  // namespace halscope

#endif  // HALSCOPE_TAXONOMY_H_
