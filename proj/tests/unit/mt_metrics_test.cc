// tests/unit/mt_metrics_test.cc

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

#include "halscope/mt_metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "halscope/text.h"
#include "unit/test_util.h"

namespace halscope {
namespace {

using Tokens = std::vector<std::string>;

template <typename Seq>
std::map<Seq, long> Grams(const std::vector<typename Seq::value_type> &items,
                          std::size_t n) {
  std::map<Seq, long> out;
  for (std::size_t i = 0; i + n <= items.size(); ++i)
    ++out[Seq(items.begin() + i, items.begin() + i + n)];
  return out;
}

// Sentence BLEU: unsmoothed unigram precision, add-one for n >= 2.
double OracleBleu(const Tokens &ref, const Tokens &hyp) {
  if (hyp.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto h = Grams<Tokens>(hyp, n);
    auto r = Grams<Tokens>(ref, n);
    long hits = 0, total = 0;
    for (auto &[g, c] : h) {
      total += c;
      hits += std::min(c, r.count(g) ? r[g] : 0L);
    }
    double p = n == 1 ? static_cast<double>(hits) / total
                      : (hits + 1.0) / (total + 1.0);
    if (p == 0) return 0.0;
    log_sum += std::log(p);
  }
  double bp = hyp.size() < ref.size()
                  ? std::exp(1.0 - static_cast<double>(ref.size()) / hyp.size())
                  : 1.0;
  return 100.0 * bp * std::exp(log_sum / 4);
}

std::vector<char> Chars(const std::string &s) {
  std::vector<char> out;
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\n') out.push_back(c);
  return out;
}

// chrF, beta = 2, orders 1..6, average over orders that exist on both sides.
double OracleChrf(const std::string &ref, const std::string &hyp) {
  auto rc = Chars(ref), hc = Chars(hyp);
  if (rc.empty() && hc.empty()) return 100.0;
  double sum = 0;
  int orders = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    auto h = Grams<std::vector<char>>(hc, n);
    auto r = Grams<std::vector<char>>(rc, n);
    if (h.empty() || r.empty()) continue;
    long ht = 0, rt = 0, m = 0;
    for (auto &[g, c] : h) {
      ht += c;
      if (r.count(g)) m += std::min(c, r[g]);
    }
    for (auto &[g, c] : r) rt += c;
    ++orders;
    if (m == 0) continue;
    double p = static_cast<double>(m) / ht, rec = static_cast<double>(m) / rt;
    sum += 5 * p * rec / (4 * p + rec);
  }
  return orders == 0 ? 0.0 : 100.0 * sum / orders;
}

double OracleRouge1(const Tokens &ref, const Tokens &hyp) {
  if (ref.empty() && hyp.empty()) return 1.0;
  if (ref.empty() || hyp.empty()) return 0.0;
  auto h = Grams<Tokens>(hyp, 1), r = Grams<Tokens>(ref, 1);
  long m = 0;
  for (auto &[g, c] : h)
    if (r.count(g)) m += std::min(c, r[g]);
  if (m == 0) return 0.0;
  double p = static_cast<double>(m) / hyp.size(), rec = static_cast<double>(m) / ref.size();
  return 2 * p * rec / (p + rec);
}

TEST(SentenceBleu, Examples) {
  EXPECT_NEAR(SentenceBleu("the cat sat on the mat", "the cat sat on the mat"), 100.0, 1e-9);
  EXPECT_EQ(SentenceBleu("the cat", ""), 0.0);
  EXPECT_EQ(SentenceBleu("the cat", "dog bird"), 0.0);
}

TEST(SentenceBleu, MatchesOracle) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 2000; ++trial) {
    Tokens ref = testing::RandomTokens(rng, 12, 5);
    Tokens hyp = testing::RandomTokens(rng, 12, 5);
    if (ref.empty()) continue;
    EXPECT_NEAR(SentenceBleu(JoinTokens(ref), JoinTokens(hyp)), OracleBleu(ref, hyp), 1e-9);
  }
}

TEST(CorpusBleu, IdenticalCorpusScores100) {
  BleuStats total;
  total += ComputeBleuStats("a b c d e", "a b c d e");
  total += ComputeBleuStats("f g h i", "f g h i");
  EXPECT_NEAR(CorpusBleu(total), 100.0, 1e-9);
  EXPECT_EQ(total.hyp_len, 9);
  EXPECT_EQ(total.ref_len, 9);
}

TEST(Chrf, Examples) {
  EXPECT_NEAR(SentenceChrf2("abcd", "abcd"), 100.0, 1e-9);
  // Orders 1..3 match 3/4, 2/3, 1/2 of both sides; order 4 has no match.
  double expected = 100.0 * (0.75 + 2.0 / 3.0 + 0.5 + 0.0) / 4.0;
  EXPECT_NEAR(SentenceChrf2("abcd", "abce"), expected, 1e-9);
  EXPECT_NEAR(SentenceChrf2("a b", "ab"), 100.0, 1e-9);
  EXPECT_EQ(SentenceChrf2("abc", ""), 0.0);
}

TEST(Chrf, MatchesOracle) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string ref = JoinTokens(testing::RandomTokens(rng, 6, 4));
    std::string hyp = JoinTokens(testing::RandomTokens(rng, 6, 4));
    EXPECT_NEAR(SentenceChrf2(ref, hyp), OracleChrf(ref, hyp), 1e-9) << ref << "|" << hyp;
  }
}

TEST(Rouge1, MatchesOracle) {
  EXPECT_NEAR(Rouge1("a b c", "a b d e"), 2 * (0.5 * 2.0 / 3) / (0.5 + 2.0 / 3), 1e-12);
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 2000; ++trial) {
    Tokens ref = testing::RandomTokens(rng, 8, 5);
    Tokens hyp = testing::RandomTokens(rng, 8, 5);
    EXPECT_NEAR(Rouge1(JoinTokens(ref), JoinTokens(hyp)), OracleRouge1(ref, hyp), 1e-12);
  }
}

TEST(Metrics, SubstitutingReferenceWordsNeverHelps) {
  Tokens ref = Tokenize("the quick brown fox jumps over the lazy dog today");
  Tokens hyp = ref;
  double bleu = SentenceBleu(JoinTokens(ref), JoinTokens(hyp));
  double rouge = Rouge1(JoinTokens(ref), JoinTokens(hyp));
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    hyp[i] = "oov" + std::to_string(i);
    double b = SentenceBleu(JoinTokens(ref), JoinTokens(hyp));
    double r = Rouge1(JoinTokens(ref), JoinTokens(hyp));
    EXPECT_LE(b, bleu + 1e-12);
    EXPECT_LE(r, rouge + 1e-12);
    bleu = b;
    rouge = r;
  }
  EXPECT_EQ(rouge, 0.0);
}

}  // namespace
}  // namespace halscope
