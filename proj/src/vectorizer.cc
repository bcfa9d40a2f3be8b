// src/vectorizer.cc

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

#include "halscope/vectorizer.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "halscope/errors.h"
#include "halscope/text.h"

namespace halscope {

TokenId TokenIdOf(std::string_view token) { return Fnv1a64(token); }

SparseVector::SparseVector(std::vector<std::pair<TokenId, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  for (const auto &[id, w] : entries) {
    if (!entries_.empty() && entries_.back().first == id)
      entries_.back().second += w;
    else
      entries_.emplace_back(id, w);
  }
  std::erase_if(entries_, [](const auto &e) { return e.second == 0.0; });
  double sq = 0.0;
  for (const auto &e : entries_) sq += e.second * e.second;
  norm_ = std::sqrt(sq);
}

double SparseVector::Dot(const SparseVector &other) const {
  double acc = 0.0;
  auto a = entries_.begin(), b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      acc += a->second * b->second;
      ++a, ++b;
    }
  }
  return acc;
}

double SparseVector::Weight(TokenId id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const auto &e, TokenId key) { return e.first < key; });
  return it != entries_.end() && it->first == id ? it->second : 0.0;
}

double CosineSimilarity(const SparseVector &o, const SparseVector &r) {
  if (o.norm() == 0.0 || r.norm() == 0.0) return 0.0;
  double c = o.Dot(r) / (o.norm() * r.norm());
  return std::clamp(c, -1.0, 1.0);
}

Vectorizer Vectorizer::FitTfIdf(
    std::span<const std::vector<std::string>> documents) {
  Vectorizer v(VectorizerMode::kTfIdf);
  v.Fit(documents);
  return v;
}

void Vectorizer::Fit(std::span<const std::vector<std::string>> documents) {
  std::unordered_map<TokenId, std::size_t> df;
  for (const auto &doc : documents) {
    std::unordered_set<TokenId> seen;
    for (const std::string &tok : doc) {
      TokenId id = TokenIdOf(tok);
      if (seen.insert(id).second) ++df[id];
    }
  }
  documents_ = documents.size();
  idf_.clear();
  idf_.reserve(df.size());
  const double numerator = 1.0 + static_cast<double>(documents_);
  for (const auto &[id, count] : df)
    idf_[id] = std::log(numerator / (1.0 + static_cast<double>(count))) + 1.0;
  fitted_ = true;
}

SparseVector Vectorizer::Transform(std::span<const std::string> tokens) const {
  if (mode_ == VectorizerMode::kTfIdf && !fitted_)
    throw Error(Errc::kUnfittedVectorizer, "call Fit before Transform");
  std::unordered_map<TokenId, double> tf;
  for (const std::string &tok : tokens) tf[TokenIdOf(tok)] += 1.0;
  std::vector<std::pair<TokenId, double>> entries;
  entries.reserve(tf.size());
  for (const auto &[id, count] : tf) {
    if (mode_ == VectorizerMode::kCounts) {
      entries.emplace_back(id, count);
      continue;
    }
    auto it = idf_.find(id);
    if (it != idf_.end()) entries.emplace_back(id, count * it->second);
  }
  return SparseVector(std::move(entries));
}

SparseVector Vectorizer::TransformText(std::string_view text) const {
  std::vector<std::string> tokens = Tokenize(text);
  return Transform(tokens);
}

double Vectorizer::Idf(std::string_view token) const {
  auto it = idf_.find(TokenIdOf(token));
  return it == idf_.end() ? 0.0 : it->second;
}

}  // namespace halscope
