// include/halscope/provenance.h

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


// Nearest-neighbour search over training transcripts, used to tell whether a
// hallucinated output was copied from the training labels.

#ifndef HALSCOPE_PROVENANCE_H_
#define HALSCOPE_PROVENANCE_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halscope/detector.h"
#include "halscope/vectorizer.h"

namespace halscope {

struct ScoredDoc {
  std::string id;
  double score = 0.0;
};

/// TF-IDF vectors of a fixed document collection. Immutable after Build;
/// queries are safe to run concurrently.
class TfIdfIndex {
 public:
  /// Texts are normalized like corpus transcripts. Throws EmptyCollection.
  static TfIdfIndex Build(const std::map<std::string, std::string> &texts);

  /// Top-k documents by cosine similarity, descending, ties by ascending id.
  /// Throws InvalidConfig for k == 0.
  std::vector<ScoredDoc> Query(std::string_view text, std::size_t k = 5) const;

  std::size_t size() const { return ids_.size(); }
  const std::string &id(std::size_t i) const { return ids_[i]; }
  const SparseVector &vector(std::size_t i) const { return vectors_[i]; }
  const Vectorizer &vectorizer() const { return vectorizer_; }

 private:
  TfIdfIndex() = default;

  Vectorizer vectorizer_;
  std::vector<std::string> ids_;
  std::vector<SparseVector> vectors_;
};

enum class Verdict { kCopied, kGenerated };

std::string_view VerdictName(Verdict v);

struct ProvenanceEntry {
  std::string record_id;
  Phase phase = Phase::kNatural;
  std::string hypothesis;
  std::vector<ScoredDoc> candidates;
  Verdict verdict = Verdict::kGenerated;
};

struct ProvenanceOptions {
  std::size_t k = 5;
  double copy_threshold = 0.95;
};

/// One entry per record; COPIED iff the best candidate scores at least
/// copy_threshold.
std::vector<ProvenanceEntry> ProvenanceReport(
    const TfIdfIndex &index, std::span<const EvalRecord> records,
    const ProvenanceOptions &options = {});

std::string ProvenanceToJson(std::span<const ProvenanceEntry> entries,
                             const ProvenanceOptions &options);

}  // namespace halscope

#endif  // HALSCOPE_PROVENANCE_H_
