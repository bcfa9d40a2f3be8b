// include/halscope/vectorizer.h

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

#ifndef HALSCOPE_VECTORIZER_H_
#define HALSCOPE_VECTORIZER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace halscope {

/// Token ids are 64-bit FNV-1a hashes of the token text, so vectors built by
/// different vectorizers share one id space.
using TokenId = std::uint64_t;
TokenId TokenIdOf(std::string_view token);

/// Nonnegative sparse vector with entries sorted by id, no stored zeros, and
/// a cached Euclidean norm.
class SparseVector {
 public:
  SparseVector() = default;
  /// Duplicate ids are summed; zero weights are dropped.
  explicit SparseVector(std::vector<std::pair<TokenId, double>> entries);

  const std::vector<std::pair<TokenId, double>> &entries() const {
    return entries_;
  }
  double norm() const { return norm_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  double Dot(const SparseVector &other) const;
  double Weight(TokenId id) const;

 private:
  std::vector<std::pair<TokenId, double>> entries_;
  double norm_ = 0.0;
};

/// o.r / (|o| |r|), or 0 when either vector is empty.
double CosineSimilarity(const SparseVector &o, const SparseVector &r);

enum class VectorizerMode { kCounts, kTfIdf };

/// Maps token sequences to sparse vectors. In TF-IDF mode the weight of a
/// token is tf * (ln((1 + docs) / (1 + df)) + 1) and tokens unseen during
/// Fit are dropped; in counts mode the weight is the raw term count.
class Vectorizer {
 public:
  explicit Vectorizer(VectorizerMode mode = VectorizerMode::kTfIdf)
      : mode_(mode) {}

  static Vectorizer Counts() { return Vectorizer(VectorizerMode::kCounts); }
  static Vectorizer FitTfIdf(
      std::span<const std::vector<std::string>> documents);

  /// Builds the IDF table (TF-IDF mode); replaces any previous fit.
  void Fit(std::span<const std::vector<std::string>> documents);

  /// Throws UnfittedVectorizer in TF-IDF mode before Fit.
  SparseVector Transform(std::span<const std::string> tokens) const;
  SparseVector TransformText(std::string_view text) const;

  VectorizerMode mode() const { return mode_; }
  bool fitted() const { return fitted_; }
  std::size_t document_count() const { return documents_; }
  /// IDF of a token seen during Fit; 0 for unseen tokens.
  double Idf(std::string_view token) const;

 private:
  VectorizerMode mode_;
  bool fitted_ = false;
  std::size_t documents_ = 0;
  std::unordered_map<TokenId, double> idf_;
};

}  // namespace halscope

#endif  // HALSCOPE_VECTORIZER_H_
