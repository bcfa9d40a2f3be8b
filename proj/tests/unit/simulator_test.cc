// tests/unit/simulator_test.cc

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

#include "halscope/simulator.h"

#include <random>

#include <gtest/gtest.h>

#include "json.hpp"

#include "halscope/errors.h"
#include "halscope/language_model.h"
#include "halscope/perturb.h"
#include "halscope/protocol.h"
#include "halscope/synthetic.h"
#include "halscope/text.h"
#include "unit/test_util.h"

namespace halscope {
namespace {

Waveform Quiet(std::size_t n = 32000) {
  Waveform w;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.samples[i] = 0.05f * ((i % 7) / 7.0f - 0.5f);
  return w;
}

Waveform LoudOnset(std::uint64_t seed = 1) {
  return InjectBegin(Quiet(), NoiseSpec::Begin(0.5, 1.0, NoiseMode::kAdd, seed));
}

SimBackendConfig Pool(SimBackendConfig c) {
  c.memorized_pool = {"memorized sentence one", "another memorized line"};
  return c;
}

TEST(SimTranscribe, CleanConfigIsIdentity) {
  SimBackendConfig c;
  for (const char *text : {"hello there world", "a", "the cat sat on the mat"}) {
    EXPECT_EQ(SimTranscribe(c, Quiet(), text).text, text);
    EXPECT_EQ(SimTranscribe(c, LoudOnset(), text).text, text);
  }
}

TEST(SimTranscribe, ForcedHallucinationComesFromPool) {
  SimBackendConfig c = Pool({});
  c.p_halluc = 1.0;
  SimOutput out = SimTranscribe(c, LoudOnset(), "the spoken words");
  EXPECT_TRUE(out.trace.hallucinated);
  EXPECT_EQ(out.text, c.memorized_pool[out.trace.pool_index]);
  EXPECT_GT(out.trace.onset_energy, c.energy_threshold);
}

TEST(SimTranscribe, NoHallucinationBelowEnergyThreshold) {
  SimBackendConfig c = Pool({});
  c.p_halluc = 1.0;
  for (int i = 0; i < 200; ++i) {
    std::string text = "utterance number " + std::to_string(i);
    SimOutput out = SimTranscribe(c, Quiet(), text);
    EXPECT_FALSE(out.trace.hallucinated);
    EXPECT_EQ(out.text, text);
  }
  // Noise spread over the whole utterance has no onset contrast.
  Waveform whole = InjectWhole(Quiet(), NoiseSpec::Whole(0.5, NoiseMode::kAdd, 3));
  EXPECT_LT(OnsetEnergy(whole, 1.0), c.energy_threshold);
  EXPECT_FALSE(SimTranscribe(c, whole, "some words here").trace.hallucinated);
}

TEST(SimTranscribe, DeterministicPerInput) {
  SimBackendConfig c = Pool({});
  c.seed = 9;
  c.p_halluc = 0.5;
  c.base_confusion_rate = 0.3;
  c.p_osc = 0.3;
  Waveform w = LoudOnset(4);
  std::string first = SimTranscribe(c, w, "one two three four five").text;
  for (int i = 0; i < 5; ++i) EXPECT_EQ(SimTranscribe(c, w, "one two three four five").text, first);
}

TEST(SimTranscribe, HallucinationSetsAreNestedInProbability) {
  SimBackendConfig lo = Pool({}), hi = Pool({});
  lo.p_halluc = 0.1;
  hi.p_halluc = 0.3;
  for (std::uint64_t s = 0; s < 300; ++s) {
    Waveform w = LoudOnset(s);
    std::string text = "text " + std::to_string(s);
    if (SimTranscribe(lo, w, text).trace.hallucinated)
      EXPECT_TRUE(SimTranscribe(hi, w, text).trace.hallucinated);
  }
}

TEST(SimTranscribe, HallucinationFrequencyTracksProbability) {
  SimBackendConfig c = Pool({});
  c.p_halluc = 0.2;
  int fired = 0;
  for (std::uint64_t s = 0; s < 500; ++s)
    fired += SimTranscribe(c, LoudOnset(s), "utt " + std::to_string(s)).trace.hallucinated;
  // Binomial(500, 0.2): mean 100, sd ~8.9.
  EXPECT_GE(fired, 77);
  EXPECT_LE(fired, 123);
}

TEST(SimTranscribe, ConfusionCapAndOscillationShape) {
  SimBackendConfig c;
  c.base_confusion_rate = 1.0;
  std::string text = "alpha beta gamma delta epsilon zeta";
  SimOutput out = SimTranscribe(c, Quiet(), text);
  EXPECT_EQ(out.trace.substitutions, 3u);
  EXPECT_EQ(Tokenize(out.text).size(), 6u);

  SimBackendConfig o;
  o.p_osc = 1.0;
  SimOutput osc = SimTranscribe(o, Quiet(), text);
  ASSERT_TRUE(osc.trace.oscillated);
  EXPECT_GE(osc.trace.osc_copies, 3u);
  EXPECT_LE(osc.trace.osc_copies, 8u);
  EXPECT_EQ(Tokenize(osc.text).size(), 6 + osc.trace.osc_ngram_len * osc.trace.osc_copies);
  EXPECT_EQ(osc.text.substr(0, text.size()), text);
}

TEST(ConfuseWord, NeverReturnsTheInput) {
  std::mt19937_64 rng(1);
  for (const std::string w : {"the", "a", "horse", "xyz", "q", "hmm", "111", "dog"})
    for (int i = 0; i < 20; ++i) EXPECT_NE(ConfuseWord(w, rng), w);
}

TEST(SpokenTextIndex, ResolvesNoiseCopies) {
  Corpus c("c", {{"u1", "/a.wav", "hello world", std::nullopt}});
  SpokenTextIndex idx(c);
  EXPECT_EQ(idx.Lookup("u1"), "hello world");
  EXPECT_EQ(idx.Lookup("u1#noise7"), "hello world");
  EXPECT_EQ(*idx.FindByPath("/a.wav"), "hello world");
  EXPECT_EQ(idx.FindByPath("/b.wav"), nullptr);
  EXPECT_THROW(idx.Lookup("u2"), Error);
}

TEST(LoadSimConfig, ParsesYamlAndPoolFile) {
  testing::TempDir dir;
  testing::WriteFile(dir / "pool.txt", "First Line\n\nsecond line\n");
  testing::WriteFile(dir / "sim.yaml",
                     "seed: 5\np_halluc: 0.25\nbase_confusion_rate: 0.1\n"
                     "memorized_pool_file: pool.txt\n");
  SimBackendConfig c = LoadSimConfig((dir / "sim.yaml").string());
  EXPECT_EQ(c.seed, 5u);
  EXPECT_DOUBLE_EQ(c.p_halluc, 0.25);
  ASSERT_EQ(c.memorized_pool.size(), 2u);
  EXPECT_EQ(c.memorized_pool[0], "first line");

  testing::WriteFile(dir / "bad.yaml", "p_hallucination: 0.2\n");
  EXPECT_THROW(LoadSimConfig((dir / "bad.yaml").string()), Error);
  testing::WriteFile(dir / "nopool.yaml", "p_halluc: 0.2\n");
  EXPECT_THROW(LoadSimConfig((dir / "nopool.yaml").string()), Error);
  EXPECT_THROW(LoadSimConfig((dir / "absent.yaml").string()), Error);
}

TEST(SimRequestHandler, TranscribesAndScores) {
  Corpus c("c", {{"u1", "/a.wav", "hello world", std::nullopt}});
  auto idx = std::make_shared<const SpokenTextIndex>(c);
  auto lm = std::make_shared<const UniformLanguageModel>(7);
  RequestHandler h = MakeSimRequestHandler({}, idx, lm);
  Waveform w = Quiet(100);
  nlohmann::json req = {{"op", "transcribe"}, {"utterance_id", "u1"},
                        {"pcm_f32_base64", EncodePcm(w.samples)}, {"sample_rate", 16000}};
  EXPECT_EQ(h(req)["transcript"], "hello world");
  nlohmann::json ppl = h({{"op", "ppl"}, {"text", "any words"}});
  EXPECT_NEAR(ppl["ppl"].get<double>(), 7.0, 1e-9);
  EXPECT_THROW(h({{"op", "dance"}}), Error);
}

TEST(SimulatedBackend, UnknownUtteranceIsPerRecordError) {
  Corpus c("c", {{"u1", "/a.wav", "hello", std::nullopt}});
  SimulatedBackend b({}, std::make_shared<const SpokenTextIndex>(c));
  Waveform w = Quiet(10);
  EXPECT_TRUE(b.Transcribe({"u1", &w, ""}).ok());
  EXPECT_FALSE(b.Transcribe({"nope", &w, ""}).ok());
}

}  // namespace
}  // namespace halscope
