// include/halscope/language_model.h

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

#ifndef HALSCOPE_LANGUAGE_MODEL_H_
#define HALSCOPE_LANGUAGE_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace halscope {

/// Anything that can score a sentence's perplexity.
class PerplexityProvider {
 public:
  virtual ~PerplexityProvider() = default;
  /// |tokens| is non-empty; callers go through Perplexity().
  virtual double SentencePerplexity(std::span<const std::string> tokens) const = 0;
};

/// PPL = P(W)^(-1/n) where n counts real tokens (no boundary markers).
/// Throws EmptySentence for empty input; provider failures surface as
/// ProviderFailure.
double Perplexity(std::span<const std::string> tokens,
                  const PerplexityProvider &provider);

/// Every token has probability 1/V, so PPL == V for any sentence.
class UniformLanguageModel : public PerplexityProvider {
 public:
  explicit UniformLanguageModel(std::size_t vocab_size);
  double SentencePerplexity(std::span<const std::string> tokens) const override;

 private:
  double log_vocab_;
};

struct SmoothingConfig {
  /// Add-k constant; must be > 0.
  double k = 0.1;
  /// Training tokens seen fewer times than this are mapped to <unk>.
  int unk_min_count = 2;
};

/// Add-k smoothed n-gram model without backoff.
///
/// For order 1 the model is a plain unigram distribution over the vocabulary
/// plus <unk>. For order >= 2 each sentence is padded with (order - 1) <s>
/// markers and one </s>; </s> is a predicted event and is part of P(W), but
/// it does not count towards n in the perplexity exponent.
///
///   P(w | h) = (c(h, w) + k) / (c(h) + k * |V|)
///
/// where |V| counts the vocabulary, <unk> and (order >= 2) </s>. Unseen
/// contexts therefore get the uniform distribution.
class NgramLanguageModel : public PerplexityProvider {
 public:
  static constexpr const char *kUnk = "<unk>";
  static constexpr const char *kBos = "<s>";
  static constexpr const char *kEos = "</s>";

  /// Throws EmptyTrainingText, InvalidSmoothing (k <= 0) or InvalidConfig
  /// (order < 1).
  static NgramLanguageModel Train(std::span<const std::vector<std::string>> texts,
                                  int order, const SmoothingConfig &smoothing = {});

  int order() const { return order_; }
  /// Size of the predicted-event set (vocabulary + <unk> [+ </s>]).
  std::size_t EventCount() const { return events_.size(); }
  /// Predicted events, in id order.
  const std::vector<std::string> &Events() const { return events_; }
  bool InVocabulary(const std::string &token) const;

  /// P(word | context). |context| holds the preceding tokens (raw text, may
  /// include <s>); only the last order-1 are used and missing positions are
  /// filled with <s>.
  double Probability(std::span<const std::string> context,
                     const std::string &word) const;

  /// Natural-log probability of the sentence, including </s> for order >= 2.
  double SentenceLogProb(std::span<const std::string> tokens) const;

  double SentencePerplexity(std::span<const std::string> tokens) const override;

 private:
  struct ContextStats {
    std::uint64_t total = 0;
    std::unordered_map<std::uint32_t, std::uint64_t> next;
  };

  std::uint32_t IdOf(const std::string &token) const;
  std::string ContextKey(std::span<const std::uint32_t> ids) const;
  double ProbabilityById(std::span<const std::uint32_t> context,
                         std::uint32_t word) const;

  int order_ = 1;
  double k_ = 0.1;
  std::vector<std::string> events_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::uint32_t unk_id_ = 0;
  std::uint32_t eos_id_ = 0;
  std::uint32_t bos_id_ = 0;  // context-only; not a predicted event
  std::unordered_map<std::string, ContextStats> contexts_;
};

}  // namespace halscope

#endif  // HALSCOPE_LANGUAGE_MODEL_H_
