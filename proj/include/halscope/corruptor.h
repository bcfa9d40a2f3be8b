// include/halscope/corruptor.h

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

// Label-mismatch dataset corruption. Each recipe draws source audio and
// target transcripts from the same corpus, pairs them so that no target is the
// source's own reference, and appends the pairs to the corpus as new
// utterances with ids "<source-id>#noise<i>".
//
//   UU  unique sources,     unique targets
//   RR  rr_pair_count distinct (source, target) pairs, each repeated
//   RU  rr_pair_count repeating sources, unique targets
//   UR  unique sources,     targets cycling over rr_pair_count sentences

#ifndef HALSCOPE_CORRUPTOR_H_
#define HALSCOPE_CORRUPTOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halscope/corpus.h"

namespace halscope {

enum class CorruptionKind { kUU, kRR, kRU, kUR };

std::string_view CorruptionKindName(CorruptionKind k);
CorruptionKind ParseCorruptionKind(std::string_view s);

struct CorruptionScheme {
  CorruptionKind kind = CorruptionKind::kUU;
  /// Exactly one of fraction / count is set. A fraction becomes
  /// round(fraction * corpus size) injections.
  std::optional<double> fraction;
  std::optional<std::size_t> count;
  int rr_pair_count = 10;
  std::uint64_t seed = 0;

  /// Throws InvalidVolume / InvalidConfig.
  void Validate() const;
  /// Number of injections for a corpus of |corpus_size| utterances.
  std::size_t ResolveCount(std::size_t corpus_size) const;
};

enum class PairOrigin { kReal, kInjected };

struct Pairing {
  std::string injected_id;
  std::string source_id;
  std::string target_id;
  std::string target_text;
  PairOrigin origin = PairOrigin::kInjected;
};

struct CorruptionManifest {
  CorruptionScheme scheme;
  std::vector<std::string> corrupted_ids;
  std::vector<Pairing> pairings;
};

struct CorruptionResult {
  Corpus corpus;
  CorruptionManifest manifest;
};

/// Errors: InvalidVolume, CorpusTooSmall.
CorruptionResult Corrupt(const Corpus &corpus, const CorruptionScheme &scheme);

/// JSON sidecar with a stable field order.
std::string CorruptionManifestToJson(const CorruptionManifest &manifest);

}  // namespace halscope

#endif  // HALSCOPE_CORRUPTOR_H_
