// src/taxonomy.cc

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

#include "halscope/taxonomy.h"

#include <cmath>

#include "halscope/errors.h"

namespace halscope {

void Thresholds::Validate() const {
  if (!(wer > 0.0) || !std::isfinite(wer))
    throw Error(Errc::kInvalidConfig, "WER threshold must be > 0");
  if (!(cos >= 0.0 && cos <= 1.0))
    throw Error(Errc::kInvalidConfig, "cosine threshold must be in [0, 1]");
  if (!(ppl > 0.0) || !std::isfinite(ppl))
    throw Error(Errc::kInvalidConfig, "perplexity threshold must be > 0");
}

std::string_view ErrorClassName(ErrorClass c) {
  switch (c) {
    case ErrorClass::kClean: return "CLEAN";
    case ErrorClass::kPhoneticError: return "PHONETIC_ERROR";
    case ErrorClass::kOscillation: return "OSCILLATION";
    case ErrorClass::kHallucination: return "HALLUCINATION";
    case ErrorClass::kDisfluentError: return "DISFLUENT_ERROR";
  }
  return "UNKNOWN";
}

std::optional<ErrorClass> ParseErrorClass(std::string_view name) {
  for (ErrorClass c : kAllErrorClasses)
    if (ErrorClassName(c) == name) return c;
  return std::nullopt;
}

void OscillationConfig::Validate() const {
  if (min_ngram < 1) throw Error(Errc::kInvalidConfig, "min_ngram must be >= 1");
  if (min_repeats < 3)
    throw Error(Errc::kInvalidConfig, "min_repeats must be >= 3");
}

OscillationMatch DetectOscillation(std::span<const std::string> hyp,
                                   const OscillationConfig &config) {
  config.Validate();
  OscillationMatch match;
  const std::size_t len = hyp.size();
  const std::size_t reps = static_cast<std::size_t>(config.min_repeats);
  for (std::size_t n = config.min_ngram; n * reps <= len; ++n) {
    for (std::size_t start = 0; start + n * reps <= len; ++start) {
      // Count how many copies of hyp[start, start+n) follow back to back.
      std::size_t copies = 1;
      while (start + (copies + 1) * n <= len) {
        bool same = true;
        for (std::size_t k = 0; k < n && same; ++k)
          same = hyp[start + copies * n + k] == hyp[start + k];
        if (!same) break;
        ++copies;
      }
      if (copies >= reps) {
        match.found = true;
        match.start = start;
        match.repeats = static_cast<int>(copies);
        match.ngram.assign(hyp.begin() + start, hyp.begin() + start + n);
        return match;
      }
    }
  }
  return match;
}

ErrorClass Classify(double wer, double cos, double ppl, bool oscillating,
                    const Thresholds &th) {
  if (!std::isfinite(wer) || !std::isfinite(cos) || !std::isfinite(ppl))
    throw Error(Errc::kNonFiniteInput, "classify needs finite metrics");
  if (wer <= th.wer) return ErrorClass::kClean;
  if (oscillating) return ErrorClass::kOscillation;
  if (cos < th.cos) {
    return ppl < th.ppl ? ErrorClass::kHallucination
                        : ErrorClass::kDisfluentError;
  }
  return ErrorClass::kPhoneticError;
}

}  // namespace halscope
