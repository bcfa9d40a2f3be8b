// include/halscope/alignment.h

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

#ifndef HALSCOPE_ALIGNMENT_H_
#define HALSCOPE_ALIGNMENT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace halscope {

enum class EditOp : std::uint8_t { kMatch, kSub, kIns, kDel };

/// Word-level edit alignment of a hypothesis against a reference.
/// Invariants: S + D + matches == N, S + I + matches == |hyp|.
struct Alignment {
  int substitutions = 0;
  int insertions = 0;
  int deletions = 0;
  int ref_len = 0;
  std::vector<EditOp> ops;

  int Errors() const { return substitutions + insertions + deletions; }
  int Matches() const { return ref_len - substitutions - deletions; }
  int HypLen() const { return Matches() + substitutions + insertions; }
};

/// Minimal unit-cost alignment. Among co-optimal paths the backtrace prefers
/// MATCH, then SUB, then DEL, then INS at every cell, so the counts are
/// reproducible. Throws EmptyReference for an empty |ref|.
Alignment Align(std::span<const std::string> ref,
                std::span<const std::string> hyp);

/// 100 * (S + I + D) / N. Throws ZeroReferenceLength when N == 0.
double WordErrorRate(const Alignment &a);

/// Aggregate WER over many alignments: 100 * sum(errors) / sum(N).
double CorpusWordErrorRate(std::span<const Alignment> alignments);

}  // namespace halscope

#endif  // HALSCOPE_ALIGNMENT_H_
