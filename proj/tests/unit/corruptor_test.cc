// tests/unit/corruptor_test.cc

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

#include "halscope/corruptor.h"

#include <chrono>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "halscope/errors.h"

namespace halscope {

void PrintTo(CorruptionKind k, std::ostream *os) { *os << CorruptionKindName(k); }

namespace {

Corpus MakeCorpus(std::size_t n) {
  std::vector<Utterance> u;
  u.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    u.push_back({"u" + std::to_string(i), "/a/" + std::to_string(i) + ".wav",
                 "sentence " + std::to_string(i), std::nullopt});
  return Corpus("base", std::move(u));
}

// Checks every per-kind invariant against the manifest and the new corpus.
void CheckInvariants(const Corpus &base, const CorruptionResult &r,
                     const CorruptionScheme &s, std::size_t expected_n) {
  const auto &pairs = r.manifest.pairings;
  ASSERT_EQ(pairs.size(), expected_n);
  ASSERT_EQ(r.corpus.size(), base.size() + expected_n);
  for (std::size_t i = 0; i < base.size(); ++i)
    ASSERT_EQ(r.corpus[i].id, base[i].id);
  std::set<std::string> sources, targets;
  std::set<std::pair<std::string, std::string>> distinct_pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Pairing &p = pairs[i];
    const Utterance *src = base.Find(p.source_id);
    const Utterance *tgt = base.Find(p.target_id);
    ASSERT_TRUE(src && tgt);
    ASSERT_NE(src->reference, p.target_text);
    ASSERT_EQ(tgt->reference, p.target_text);
    const Utterance &added = r.corpus[base.size() + i];
    ASSERT_EQ(added.id, p.injected_id);
    ASSERT_EQ(added.audio_path, src->audio_path);
    ASSERT_EQ(added.reference, p.target_text);
    ASSERT_EQ(p.origin, PairOrigin::kInjected);
    sources.insert(p.source_id);
    targets.insert(p.target_text);
    distinct_pairs.insert({p.source_id, p.target_text});
  }
  const std::size_t m = std::min<std::size_t>(s.rr_pair_count, expected_n);
  switch (s.kind) {
    case CorruptionKind::kUU:
      EXPECT_EQ(sources.size(), expected_n);
      EXPECT_EQ(targets.size(), expected_n);
      break;
    case CorruptionKind::kRR:
      EXPECT_EQ(distinct_pairs.size(), m);
      EXPECT_EQ(sources.size(), m);
      EXPECT_EQ(targets.size(), m);
      break;
    case CorruptionKind::kRU:
      EXPECT_EQ(sources.size(), m);
      EXPECT_EQ(targets.size(), expected_n);
      break;
    case CorruptionKind::kUR:
      EXPECT_EQ(sources.size(), expected_n);
      EXPECT_EQ(targets.size(), m);
      break;
  }
}

class CorruptKinds : public ::testing::TestWithParam<CorruptionKind> {};

TEST_P(CorruptKinds, InvariantsAtBothVolumes) {
  const Corpus base = MakeCorpus(104014);
  for (std::size_t count : {1000u, 10000u}) {
    CorruptionScheme s;
    s.kind = GetParam();
    s.count = count;
    s.seed = 123;
    auto start = std::chrono::steady_clock::now();
    CorruptionResult r = Corrupt(base, s);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(secs, 10.0);
    CheckInvariants(base, r, s, count);
    CorruptionResult again = Corrupt(base, s);
    EXPECT_EQ(CorruptionManifestToJson(r.manifest), CorruptionManifestToJson(again.manifest));
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, CorruptKinds,
                         ::testing::Values(CorruptionKind::kUU, CorruptionKind::kRR,
                                           CorruptionKind::kRU, CorruptionKind::kUR),
                         [](const auto &info) {
                           return std::string(CorruptionKindName(info.param));
                         });

TEST(Corrupt, RrRepeatsTenPairs) {
  const Corpus base = MakeCorpus(500);
  CorruptionScheme s;
  s.kind = CorruptionKind::kRR;
  s.count = 100;
  CorruptionResult r = Corrupt(base, s);
  std::map<std::pair<std::string, std::string>, int> counts;
  for (const Pairing &p : r.manifest.pairings) ++counts[{p.source_id, p.target_id}];
  ASSERT_EQ(counts.size(), 10u);
  for (auto &[k, c] : counts) EXPECT_EQ(c, 10);
}

TEST(Corrupt, FractionVolumeAndSeeds) {
  const Corpus base = MakeCorpus(104014);
  CorruptionScheme s;
  s.fraction = 0.08;
  s.seed = 1;
  EXPECT_EQ(s.ResolveCount(base.size()), 8321u);
  CorruptionScheme t = s;
  t.fraction.reset();
  t.count = 200;
  CorruptionScheme u = t;
  u.seed = 2;
  EXPECT_NE(CorruptionManifestToJson(Corrupt(base, t).manifest),
            CorruptionManifestToJson(Corrupt(base, u).manifest));
}

TEST(Corrupt, ReferencesSharedBySourceAndTargetAreAvoided) {
  std::vector<Utterance> u;
  for (int i = 0; i < 40; ++i)
    u.push_back({"u" + std::to_string(i), "", "text " + std::to_string(i % 4), std::nullopt});
  Corpus base("dups", std::move(u));
  CorruptionScheme s;
  s.count = 4;
  CorruptionResult r = Corrupt(base, s);
  for (const Pairing &p : r.manifest.pairings)
    EXPECT_NE(base.Find(p.source_id)->reference, p.target_text);
}

TEST(Corrupt, Errors) {
  const Corpus base = MakeCorpus(20);
  auto code = [&](CorruptionScheme s) {
    try {
      Corrupt(base, s);
    } catch (const Error &e) {
      return e.code();
    }
    return Errc::kIoError;
  };
  CorruptionScheme none;
  EXPECT_EQ(code(none), Errc::kInvalidVolume);
  CorruptionScheme both;
  both.fraction = 0.1;
  both.count = 2;
  EXPECT_EQ(code(both), Errc::kInvalidVolume);
  CorruptionScheme big;
  big.fraction = 1.5;
  EXPECT_EQ(code(big), Errc::kInvalidVolume);
  CorruptionScheme many;
  many.count = 21;
  EXPECT_EQ(code(many), Errc::kCorpusTooSmall);
  CorruptionScheme uniq;
  uniq.kind = CorruptionKind::kUR;
  uniq.count = 15;
  EXPECT_EQ(code(uniq), Errc::kCorpusTooSmall);
  EXPECT_EQ(ParseCorruptionKind("RR"), CorruptionKind::kRR);
  EXPECT_THROW(ParseCorruptionKind("xx"), Error);
}

}  // namespace
}  // namespace halscope
