// src/alignment.cc

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

#include "halscope/alignment.h"

#include <algorithm>

#include "halscope/errors.h"

namespace halscope {

Alignment Align(std::span<const std::string> ref,
                std::span<const std::string> hyp) {
  if (ref.empty()) throw Error(Errc::kEmptyReference, "cannot align");
  const std::size_t n = ref.size(), m = hyp.size();
  const std::size_t width = m + 1;
  // Full table: backtrace needs it, and utterances are short.
  std::vector<int> d((n + 1) * width);
  for (std::size_t j = 0; j <= m; ++j) d[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    d[i * width] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      int diag = d[(i - 1) * width + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int del = d[(i - 1) * width + j] + 1;
      int ins = d[i * width + j - 1] + 1;
      d[i * width + j] = std::min({diag, del, ins});
    }
  }

  Alignment a;
  a.ref_len = static_cast<int>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const int here = d[i * width + j];
    if (i > 0 && j > 0) {
      const int diag = d[(i - 1) * width + j - 1];
      if (ref[i - 1] == hyp[j - 1] && diag == here) {
        a.ops.push_back(EditOp::kMatch);
        --i, --j;
        continue;
      }
      if (ref[i - 1] != hyp[j - 1] && diag + 1 == here) {
        a.ops.push_back(EditOp::kSub);
        ++a.substitutions;
        --i, --j;
        continue;
      }
    }
    if (i > 0 && d[(i - 1) * width + j] + 1 == here) {
      a.ops.push_back(EditOp::kDel);
      ++a.deletions;
      --i;
      continue;
    }
    a.ops.push_back(EditOp::kIns);
    ++a.insertions;
    --j;
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

double WordErrorRate(const Alignment &a) {
  if (a.ref_len <= 0) throw Error(Errc::kZeroReferenceLength, "WER undefined");
  return 100.0 * a.Errors() / a.ref_len;
}

double CorpusWordErrorRate(std::span<const Alignment> alignments) {
  long errors = 0, words = 0;
  for (const Alignment &a : alignments) {
    errors += a.Errors();
    words += a.ref_len;
  }
  if (words == 0) throw Error(Errc::kZeroReferenceLength, "empty corpus");
  return 100.0 * static_cast<double>(errors) / static_cast<double>(words);
}

}  // namespace halscope
