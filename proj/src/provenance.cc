// src/provenance.cc

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


#include "halscope/provenance.h"

#include <algorithm>
#include <numeric>

#include "json.hpp"

#include "halscope/errors.h"
#include "halscope/text.h"

namespace halscope {

TfIdfIndex TfIdfIndex::Build(const std::map<std::string, std::string> &texts) {
  if (texts.empty()) throw Error(Errc::kEmptyCollection, "no documents to index");
  std::vector<std::vector<std::string>> docs;
  TfIdfIndex index;
  docs.reserve(texts.size());
  for (const auto &[id, text] : texts) {
    index.ids_.push_back(id);
    docs.push_back(Tokenize(NormalizeText(text)));
  }
  index.vectorizer_ = Vectorizer(VectorizerMode::kTfIdf);
  index.vectorizer_.Fit(docs);
  index.vectors_.reserve(docs.size());
  for (const auto &d : docs) index.vectors_.push_back(index.vectorizer_.Transform(d));
  return index;
}

std::vector<ScoredDoc> TfIdfIndex::Query(std::string_view text, std::size_t k) const {
  if (k == 0) throw Error(Errc::kInvalidConfig, "k must be >= 1");
  const SparseVector q = vectorizer_.Transform(Tokenize(NormalizeText(text)));
  std::vector<double> scores(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    scores[i] = CosineSimilarity(q, vectors_[i]);
  // Ids are stored sorted, so index order is id order.
  std::vector<std::size_t> order(vectors_.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + n, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  std::vector<ScoredDoc> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({ids_[order[i]], scores[order[i]]});
  return out;
}

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kCopied ? "COPIED" : "GENERATED";
}

std::vector<ProvenanceEntry> ProvenanceReport(const TfIdfIndex &index,
                                              std::span<const EvalRecord> records,
                                              const ProvenanceOptions &options) {
  std::vector<ProvenanceEntry> out;
  out.reserve(records.size());
  for (const EvalRecord &r : records) {
    ProvenanceEntry e;
    e.record_id = r.id;
    e.phase = r.phase;
    e.hypothesis = r.hypothesis;
    e.candidates = index.Query(r.hypothesis, options.k);
    e.verdict = !e.candidates.empty() &&
                        e.candidates.front().score >= options.copy_threshold
                    ? Verdict::kCopied
                    : Verdict::kGenerated;
    out.push_back(std::move(e));
  }
  return out;
}

std::string ProvenanceToJson(std::span<const ProvenanceEntry> entries,
                             const ProvenanceOptions &options) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "halscope.provenance_report";
  j["schema_version"] = 1;
  j["k"] = options.k;
  j["copy_threshold"] = options.copy_threshold;
  std::size_t copied = 0;
  ordered_json arr = ordered_json::array();
  for (const ProvenanceEntry &e : entries) {
    ordered_json item;
    item["id"] = e.record_id;
    item["phase"] = PhaseName(e.phase);
    item["hypothesis"] = e.hypothesis;
    ordered_json cands = ordered_json::array();
    for (const ScoredDoc &d : e.candidates) cands.push_back({{"id", d.id}, {"score", d.score}});
    item["candidates"] = std::move(cands);
    item["verdict"] = VerdictName(e.verdict);
    if (e.verdict == Verdict::kCopied) ++copied;
    arr.push_back(std::move(item));
  }
  j["copied"] = copied;
  j["generated"] = entries.size() - copied;
  j["entries"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace halscope
