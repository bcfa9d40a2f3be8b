// tests/unit/language_model_test.cc

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

#include <cmath>
#include <map>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "halscope/errors.h"
#include "unit/test_util.h"

namespace halscope {
namespace {

using Tokens = std::vector<std::string>;

Errc CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kIoError;
}

TEST(UniformLanguageModel, PerplexityEqualsVocabularySize) {
  std::mt19937_64 rng(17);
  for (std::size_t v : {2u, 10u, 100u}) {
    UniformLanguageModel lm(v);
    for (int trial = 0; trial < 50; ++trial) {
      Tokens s = testing::RandomTokens(rng, 30, 26);
      if (s.empty()) continue;
      double ppl = Perplexity(s, lm);
      EXPECT_LE(std::abs(ppl - v) / v, 1e-9);
    }
  }
}

TEST(NgramLanguageModel, UnigramAddK) {
  std::vector<Tokens> train = {{"a", "b"}};
  SmoothingConfig sm{1.0, 1};
  auto lm = NgramLanguageModel::Train(train, 1, sm);
  // Events {a, b, <unk>}; P(a) = (1 + 1) / (2 + 3).
  EXPECT_EQ(lm.EventCount(), 3u);
  EXPECT_NEAR(lm.Probability({}, "a"), 0.4, 1e-12);
  EXPECT_NEAR(lm.Probability({}, "zzz"), 0.2, 1e-12);
  EXPECT_NEAR(Perplexity(Tokens{"a"}, lm), 2.5, 1e-12);
}

TEST(NgramLanguageModel, BigramClosedForm) {
  std::vector<Tokens> train = {{"a", "b"}};
  SmoothingConfig sm{1.0, 1};
  auto lm = NgramLanguageModel::Train(train, 2, sm);
  // Events {a, b, <unk>, </s>}; each observed transition has count 1 in a
  // context of count 1, so P = 2 / 5; three events over two real tokens.
  EXPECT_EQ(lm.EventCount(), 4u);
  EXPECT_NEAR(Perplexity(Tokens{"a", "b"}, lm), std::pow(0.4, -1.5), 1e-9);
}

TEST(NgramLanguageModel, DistributionsSumToOne) {
  std::vector<Tokens> train = {{"the", "cat", "sat"}, {"the", "dog", "sat", "down"},
                               {"a", "cat", "ran"}};
  for (int order : {1, 2, 3}) {
    auto lm = NgramLanguageModel::Train(train, order, {0.3, 1});
    std::vector<Tokens> contexts = {{}, {"the"}, {"cat"}, {"the", "cat"}, {"zz", "yy"}};
    for (const Tokens &ctx : contexts) {
      double total = 0;
      for (const std::string &w : lm.Events()) total += lm.Probability(ctx, w);
      EXPECT_NEAR(total, 1.0, 1e-9) << "order " << order;
    }
  }
}

TEST(NgramLanguageModel, RareTokensBecomeUnknown) {
  std::vector<Tokens> train = {{"a", "a", "b"}};
  auto lm = NgramLanguageModel::Train(train, 1, {1.0, 2});
  EXPECT_TRUE(lm.InVocabulary("a"));
  EXPECT_FALSE(lm.InVocabulary("b"));
  EXPECT_DOUBLE_EQ(lm.Probability({}, "b"), lm.Probability({}, "qqq"));
}

TEST(NgramLanguageModel, Errors) {
  std::vector<Tokens> train = {{"a"}};
  std::vector<Tokens> none;
  EXPECT_EQ(CodeOf([&] { NgramLanguageModel::Train(none, 2); }),
            Errc::kEmptyTrainingText);
  EXPECT_EQ(CodeOf([&] { NgramLanguageModel::Train(train, 2, {0.0, 1}); }),
            Errc::kInvalidSmoothing);
  EXPECT_EQ(CodeOf([&] { NgramLanguageModel::Train(train, 0); }),
            Errc::kInvalidConfig);
  auto lm = NgramLanguageModel::Train(train, 2, {1.0, 1});
  EXPECT_EQ(CodeOf([&] { Perplexity(Tokens{}, lm); }), Errc::kEmptySentence);
}

class ThrowingProvider : public PerplexityProvider {
 public:
  double SentencePerplexity(std::span<const std::string>) const override {
    throw std::runtime_error("model offline");
  }
};

class NanProvider : public PerplexityProvider {
 public:
  double SentencePerplexity(std::span<const std::string>) const override {
    return std::nan("");
  }
};

TEST(Perplexity, ProviderFailuresAreWrapped) {
  EXPECT_EQ(CodeOf([] { Perplexity(Tokens{"a"}, ThrowingProvider{}); }),
            Errc::kProviderFailure);
  EXPECT_EQ(CodeOf([] { Perplexity(Tokens{"a"}, NanProvider{}); }),
            Errc::kProviderFailure);
}

TEST(NgramLanguageModel, TrainingSentencesAreMoreLikelyThanShuffles) {
  std::vector<Tokens> train;
  for (int i = 0; i < 50; ++i) train.push_back({"the", "cat", "sat", "on", "the", "mat"});
  auto lm = NgramLanguageModel::Train(train, 2);
  EXPECT_LT(Perplexity(train[0], lm),
            Perplexity(Tokens{"mat", "the", "on", "sat", "cat", "the"}, lm));
}

}  // namespace
}  // namespace halscope
