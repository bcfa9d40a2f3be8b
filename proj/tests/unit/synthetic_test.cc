// tests/unit/synthetic_test.cc

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

#include "halscope/synthetic.h"

#include <set>

#include <gtest/gtest.h>

#include "halscope/corpus.h"
#include "halscope/text.h"
#include "unit/test_util.h"

namespace halscope {
namespace {

TEST(Synthetic, VocabulariesAreDisjoint) {
  auto corpus = CorpusVocabulary();
  std::set<std::string> a(corpus.begin(), corpus.end());
  for (const std::string &w : PoolVocabulary()) EXPECT_EQ(a.count(w), 0u) << w;
}

TEST(Synthetic, DeterministicAndWellFormed) {
  SyntheticConfig cfg;
  cfg.utterances = 60;
  cfg.pool_size = 10;
  cfg.noisy_onset_fraction = 0.5;
  SyntheticCorpus a = MakeSyntheticCorpus(cfg);
  SyntheticCorpus b = MakeSyntheticCorpus(cfg);
  ASSERT_EQ(a.corpus.size(), 60u);
  EXPECT_EQ(a.corpus[0].id, "synthetic-00");
  EXPECT_EQ(a.pool, b.pool);
  EXPECT_EQ(a.noisy_onset_ids, b.noisy_onset_ids);
  EXPECT_GT(a.noisy_onset_ids.size(), 15u);
  EXPECT_LT(a.noisy_onset_ids.size(), 45u);
  for (std::size_t i = 0; i < a.corpus.size(); ++i) {
    EXPECT_EQ(a.corpus[i].reference, b.corpus[i].reference);
    std::size_t words = Tokenize(a.corpus[i].reference).size();
    EXPECT_GE(words, 6u);
    EXPECT_LE(words, 9u);
    Waveform w = a.audio(a.corpus[i]);
    EXPECT_EQ(w.samples, b.audio(b.corpus[i]).samples);
    EXPECT_TRUE(w.InRange());
  }
  std::set<std::string> pool_words;
  for (const auto &s : a.pool)
    for (const auto &w : Tokenize(s)) pool_words.insert(w);
  auto cv = CorpusVocabulary();
  for (const auto &w : cv) EXPECT_EQ(pool_words.count(w), 0u);
  EXPECT_EQ(a.LmTrainingTexts().size(), 70u);
}

TEST(Synthetic, SentencesDoNotDependOnNoiseFraction) {
  SyntheticConfig cfg;
  cfg.utterances = 30;
  SyntheticCorpus a = MakeSyntheticCorpus(cfg);
  cfg.noisy_onset_fraction = 0.3;
  SyntheticCorpus b = MakeSyntheticCorpus(cfg);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(a.corpus[i].reference, b.corpus[i].reference);
}

TEST(Synthetic, WritesLoadableCorpus) {
  testing::TempDir dir;
  SyntheticConfig cfg;
  cfg.utterances = 5;
  cfg.pool_size = 3;
  SyntheticCorpus s = MakeSyntheticCorpus(cfg);
  auto manifest = WriteSyntheticCorpus(s, dir.path());
  Corpus c = LoadManifest(manifest);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(LoadAudio(c[2].audio_path).samples, s.audio(s.corpus[2]).samples);
  EXPECT_TRUE(std::filesystem::exists(dir / "pool.txt"));
}

}  // namespace
}  // namespace halscope
