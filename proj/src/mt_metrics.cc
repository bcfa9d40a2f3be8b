// src/mt_metrics.cc

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
#include <vector>

#include "halscope/text.h"

namespace halscope {

namespace {

template <typename Seq>
std::map<Seq, long> CountNgrams(const std::vector<typename Seq::value_type> &items,
                                int n) {
  std::map<Seq, long> counts;
  if (static_cast<int>(items.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= items.size(); ++i)
    ++counts[Seq(items.begin() + i, items.begin() + i + n)];
  return counts;
}

template <typename Seq>
long ClippedOverlap(const std::map<Seq, long> &hyp,
                    const std::map<Seq, long> &ref) {
  long hits = 0;
  for (const auto &[gram, count] : hyp) {
    auto it = ref.find(gram);
    if (it != ref.end()) hits += std::min(count, it->second);
  }
  return hits;
}

}  // namespace

BleuStats &BleuStats::operator+=(const BleuStats &o) {
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    hits[n] += o.hits[n];
    totals[n] += o.totals[n];
  }
  hyp_len += o.hyp_len;
  ref_len += o.ref_len;
  return *this;
}

BleuStats ComputeBleuStats(std::string_view ref, std::string_view hyp) {
  using Gram = std::vector<std::string>;
  std::vector<std::string> r = Tokenize(ref), h = Tokenize(hyp);
  BleuStats s;
  s.hyp_len = static_cast<long>(h.size());
  s.ref_len = static_cast<long>(r.size());
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    auto hyp_grams = CountNgrams<Gram>(h, n);
    auto ref_grams = CountNgrams<Gram>(r, n);
    s.hits[n - 1] = ClippedOverlap(hyp_grams, ref_grams);
    s.totals[n - 1] = std::max(0L, s.hyp_len - n + 1);
  }
  return s;
}

namespace {

double BrevityPenalty(long hyp_len, long ref_len) {
  if (hyp_len >= ref_len) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_len) / hyp_len);
}

}  // namespace

double SentenceBleu(std::string_view ref, std::string_view hyp) {
  BleuStats s = ComputeBleuStats(ref, hyp);
  if (s.hyp_len == 0 || s.hits[0] == 0) return 0.0;
  double log_sum = std::log(static_cast<double>(s.hits[0]) / s.totals[0]);
  for (int n = 1; n < kBleuMaxOrder; ++n)
    log_sum += std::log((s.hits[n] + 1.0) / (s.totals[n] + 1.0));
  return 100.0 * BrevityPenalty(s.hyp_len, s.ref_len) *
         std::exp(log_sum / kBleuMaxOrder);
}

double CorpusBleu(const BleuStats &s) {
  if (s.hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    if (s.hits[n] == 0 || s.totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(s.hits[n]) / s.totals[n]);
  }
  return 100.0 * BrevityPenalty(s.hyp_len, s.ref_len) *
         std::exp(log_sum / kBleuMaxOrder);
}

ChrfStats &ChrfStats::operator+=(const ChrfStats &o) {
  for (int n = 0; n < kChrfMaxOrder; ++n) {
    hyp[n] += o.hyp[n];
    ref[n] += o.ref[n];
    match[n] += o.match[n];
  }
  return *this;
}

ChrfStats ComputeChrfStats(std::string_view ref, std::string_view hyp) {
  auto strip = [](std::string_view text) {
    std::vector<char> chars;
    for (char c : text)
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') chars.push_back(c);
    return chars;
  };
  std::vector<char> r = strip(ref), h = strip(hyp);
  ChrfStats s;
  for (int n = 1; n <= kChrfMaxOrder; ++n) {
    auto hyp_grams = CountNgrams<std::string>(h, n);
    auto ref_grams = CountNgrams<std::string>(r, n);
    s.hyp[n - 1] = std::max(0L, static_cast<long>(h.size()) - n + 1);
    s.ref[n - 1] = std::max(0L, static_cast<long>(r.size()) - n + 1);
    s.match[n - 1] = ClippedOverlap(hyp_grams, ref_grams);
  }
  return s;
}

double ChrfScore(const ChrfStats &s) {
  if (s.hyp[0] == 0 && s.ref[0] == 0) return 100.0;
  const double beta2 = kChrfBeta * kChrfBeta;
  double sum = 0.0;
  int effective = 0;
  for (int n = 0; n < kChrfMaxOrder; ++n) {
    if (s.hyp[n] == 0 || s.ref[n] == 0) continue;
    ++effective;
    if (s.match[n] == 0) continue;
    const double p = static_cast<double>(s.match[n]) / s.hyp[n];
    const double r = static_cast<double>(s.match[n]) / s.ref[n];
    sum += (1.0 + beta2) * p * r / (beta2 * p + r);
  }
  return effective == 0 ? 0.0 : 100.0 * sum / effective;
}

double SentenceChrf2(std::string_view ref, std::string_view hyp) {
  return ChrfScore(ComputeChrfStats(ref, hyp));
}

double Rouge1(std::string_view ref, std::string_view hyp) {
  using Gram = std::vector<std::string>;
  std::vector<std::string> r = Tokenize(ref), h = Tokenize(hyp);
  if (r.empty() && h.empty()) return 1.0;
  if (r.empty() || h.empty()) return 0.0;
  const long overlap =
      ClippedOverlap(CountNgrams<Gram>(h, 1), CountNgrams<Gram>(r, 1));
  if (overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / h.size();
  const double rc = static_cast<double>(overlap) / r.size();
  return 2.0 * p * rc / (p + rc);
}

}  // namespace halscope
