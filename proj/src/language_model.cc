// src/language_model.cc

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

#include "halscope/language_model.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "halscope/errors.h"

namespace halscope {

double Perplexity(std::span<const std::string> tokens,
                  const PerplexityProvider &provider) {
  if (tokens.empty()) throw Error(Errc::kEmptySentence, "nothing to score");
  double ppl;
  try {
    ppl = provider.SentencePerplexity(tokens);
  } catch (const Error &) {
    throw;
  } catch (const std::exception &e) {
    throw Error(Errc::kProviderFailure, e.what());
  }
  if (!(ppl > 0.0) || std::isnan(ppl))
    throw Error(Errc::kProviderFailure,
                "provider returned non-positive perplexity");
  return ppl;
}

UniformLanguageModel::UniformLanguageModel(std::size_t vocab_size)
    : log_vocab_(std::log(static_cast<double>(vocab_size))) {
  if (vocab_size == 0) throw Error(Errc::kInvalidConfig, "empty vocabulary");
}

double UniformLanguageModel::SentencePerplexity(
    std::span<const std::string> tokens) const {
  // log P(W) = -n log V, so the per-word exponent cancels n exactly.
  const double n = static_cast<double>(tokens.size());
  const double log_prob = -n * log_vocab_;
  return std::exp(-log_prob / n);
}

NgramLanguageModel NgramLanguageModel::Train(
    std::span<const std::vector<std::string>> texts, int order,
    const SmoothingConfig &smoothing) {
  if (order < 1) throw Error(Errc::kInvalidConfig, "order must be >= 1");
  if (!(smoothing.k > 0.0) || !std::isfinite(smoothing.k))
    throw Error(Errc::kInvalidSmoothing, "add-k constant must be > 0");
  std::map<std::string, std::uint64_t> freq;
  for (const auto &text : texts)
    for (const std::string &tok : text) ++freq[tok];
  if (freq.empty()) throw Error(Errc::kEmptyTrainingText, "no tokens");

  NgramLanguageModel lm;
  lm.order_ = order;
  lm.k_ = smoothing.k;
  for (const auto &[tok, count] : freq) {
    if (count >= static_cast<std::uint64_t>(std::max(1, smoothing.unk_min_count)))
      lm.events_.push_back(tok);
  }
  lm.unk_id_ = static_cast<std::uint32_t>(lm.events_.size());
  lm.events_.push_back(kUnk);
  if (order >= 2) {
    lm.eos_id_ = static_cast<std::uint32_t>(lm.events_.size());
    lm.events_.push_back(kEos);
  }
  lm.bos_id_ = static_cast<std::uint32_t>(lm.events_.size());
  for (std::uint32_t i = 0; i < lm.events_.size(); ++i) lm.ids_[lm.events_[i]] = i;

  const std::size_t history = static_cast<std::size_t>(order - 1);
  std::vector<std::uint32_t> seq;
  for (const auto &text : texts) {
    if (text.empty()) continue;
    seq.assign(history, lm.bos_id_);
    for (const std::string &tok : text) seq.push_back(lm.IdOf(tok));
    if (order >= 2) seq.push_back(lm.eos_id_);
    for (std::size_t p = history; p < seq.size(); ++p) {
      std::span<const std::uint32_t> ctx(seq.data() + p - history, history);
      ContextStats &stats = lm.contexts_[lm.ContextKey(ctx)];
      ++stats.total;
      ++stats.next[seq[p]];
    }
  }
  return lm;
}

bool NgramLanguageModel::InVocabulary(const std::string &token) const {
  auto it = ids_.find(token);
  return it != ids_.end() && it->second != unk_id_ &&
         (order_ < 2 || it->second != eos_id_);
}

std::uint32_t NgramLanguageModel::IdOf(const std::string &token) const {
  if (order_ >= 2 && token == kBos) return bos_id_;
  auto it = ids_.find(token);
  return it == ids_.end() ? unk_id_ : it->second;
}

std::string NgramLanguageModel::ContextKey(
    std::span<const std::uint32_t> ids) const {
  return std::string(reinterpret_cast<const char *>(ids.data()),
                     ids.size() * sizeof(std::uint32_t));
}

double NgramLanguageModel::ProbabilityById(
    std::span<const std::uint32_t> context, std::uint32_t word) const {
  const double v = static_cast<double>(events_.size());
  auto it = contexts_.find(ContextKey(context));
  if (it == contexts_.end()) return 1.0 / v;
  const ContextStats &stats = it->second;
  auto w = stats.next.find(word);
  const double c = w == stats.next.end() ? 0.0 : static_cast<double>(w->second);
  return (c + k_) / (static_cast<double>(stats.total) + k_ * v);
}

double NgramLanguageModel::Probability(std::span<const std::string> context,
                                       const std::string &word) const {
  const std::size_t history = static_cast<std::size_t>(order_ - 1);
  std::vector<std::uint32_t> ctx(history, bos_id_);
  const std::size_t take = std::min(history, context.size());
  for (std::size_t i = 0; i < take; ++i)
    ctx[history - take + i] = IdOf(context[context.size() - take + i]);
  std::uint32_t id = IdOf(word);
  if (id == bos_id_) id = unk_id_;
  return ProbabilityById(ctx, id);
}

double NgramLanguageModel::SentenceLogProb(
    std::span<const std::string> tokens) const {
  const std::size_t history = static_cast<std::size_t>(order_ - 1);
  std::vector<std::uint32_t> seq(history, bos_id_);
  for (const std::string &tok : tokens) {
    std::uint32_t id = IdOf(tok);
    seq.push_back(id == bos_id_ ? unk_id_ : id);
  }
  if (order_ >= 2) seq.push_back(eos_id_);
  double log_prob = 0.0;
  for (std::size_t p = history; p < seq.size(); ++p) {
    std::span<const std::uint32_t> ctx(seq.data() + p - history, history);
    log_prob += std::log(ProbabilityById(ctx, seq[p]));
  }
  return log_prob;
}

double NgramLanguageModel::SentencePerplexity(
    std::span<const std::string> tokens) const {
  return std::exp(-SentenceLogProb(tokens) / static_cast<double>(tokens.size()));
}

}  // namespace halscope
