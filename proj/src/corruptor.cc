// src/corruptor.cc

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

#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "json.hpp"

#include "halscope/errors.h"

namespace halscope {

std::string_view CorruptionKindName(CorruptionKind k) {
  switch (k) {
    case CorruptionKind::kUU: return "uu";
    case CorruptionKind::kRR: return "rr";
    case CorruptionKind::kRU: return "ru";
    case CorruptionKind::kUR: return "ur";
  }
  return "?";
}

CorruptionKind ParseCorruptionKind(std::string_view s) {
  std::string lower(s);
  for (char &c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "uu") return CorruptionKind::kUU;
  if (lower == "rr") return CorruptionKind::kRR;
  if (lower == "ru") return CorruptionKind::kRU;
  if (lower == "ur") return CorruptionKind::kUR;
  throw Error(Errc::kInvalidConfig, "unknown corruption scheme: " + lower);
}

void CorruptionScheme::Validate() const {
  if (fraction.has_value() == count.has_value())
    throw Error(Errc::kInvalidVolume, "set exactly one of fraction or count");
  if (fraction && !(*fraction > 0.0 && *fraction < 1.0))
    throw Error(Errc::kInvalidVolume, "fraction must be in (0, 1)");
  if (count && *count == 0)
    throw Error(Errc::kInvalidVolume, "count must be positive");
  if (rr_pair_count < 1)
    throw Error(Errc::kInvalidConfig, "rr_pair_count must be >= 1");
}

std::size_t CorruptionScheme::ResolveCount(std::size_t corpus_size) const {
  Validate();
  if (count) return *count;
  auto n = static_cast<std::size_t>(
      std::llround(*fraction * static_cast<double>(corpus_size)));
  if (n == 0) throw Error(Errc::kInvalidVolume, "fraction rounds to zero");
  return n;
}

namespace {

class Drawer {
 public:
  Drawer(const Corpus &corpus, std::uint64_t seed)
      : corpus_(corpus), rng_(seed) {}

  std::size_t Index(std::size_t n) {
    // Rejection sampling keeps the draw unbiased and portable.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  std::vector<std::size_t> Shuffled() {
    std::vector<std::size_t> order(corpus_.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[Index(i)]);
    return order;
  }

  /// |want| distinct utterances, optionally skipping some references.
  std::vector<std::size_t> Sources(
      std::size_t want, const std::unordered_set<std::string> &banned_refs) {
    std::vector<std::size_t> picked;
    for (std::size_t i : Shuffled()) {
      if (picked.size() == want) break;
      if (banned_refs.count(corpus_[i].reference)) continue;
      picked.push_back(i);
    }
    if (picked.size() < want)
      throw Error(Errc::kCorpusTooSmall,
                  "need " + std::to_string(want) + " source utterances");
    return picked;
  }

  /// |want| utterances with pairwise-distinct, non-empty references.
  std::vector<std::size_t> Targets(
      std::size_t want, const std::unordered_set<std::string> &banned_refs) {
    std::vector<std::size_t> picked;
    std::unordered_set<std::string> used;
    for (std::size_t i : Shuffled()) {
      if (picked.size() == want) break;
      const std::string &text = corpus_[i].reference;
      if (text.empty() || banned_refs.count(text)) continue;
      if (!used.insert(text).second) continue;
      picked.push_back(i);
    }
    if (picked.size() < want)
      throw Error(Errc::kCorpusTooSmall,
                  "need " + std::to_string(want) + " distinct target texts");
    return picked;
  }

 private:
  const Corpus &corpus_;
  std::mt19937_64 rng_;
};

// Swaps targets until no source is paired with its own reference.
void ResolveSelfMatches(const Corpus &corpus,
                        const std::vector<std::size_t> &sources,
                        std::vector<std::size_t> &targets) {
  const std::size_t n = sources.size();
  auto conflict = [&](std::size_t s, std::size_t t) {
    return corpus[s].reference == corpus[t].reference;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!conflict(sources[i], targets[i])) continue;
    bool fixed = false;
    for (std::size_t step = 1; step < n && !fixed; ++step) {
      std::size_t j = (i + step) % n;
      if (!conflict(sources[i], targets[j]) &&
          !conflict(sources[j], targets[i])) {
        std::swap(targets[i], targets[j]);
        fixed = true;
      }
    }
    if (!fixed)
      throw Error(Errc::kCorpusTooSmall,
                  "cannot pair sources with unrelated targets");
  }
}

}  // namespace

CorruptionResult Corrupt(const Corpus &corpus, const CorruptionScheme &scheme) {
  const std::size_t n = scheme.ResolveCount(corpus.size());
  if (n > corpus.size())
    throw Error(Errc::kCorpusTooSmall,
                std::to_string(n) + " injections requested from " +
                    std::to_string(corpus.size()) + " utterances");
  const std::size_t m =
      std::min<std::size_t>(static_cast<std::size_t>(scheme.rr_pair_count), n);
  Drawer draw(corpus, scheme.seed);

  // Per-injection (source index, target index).
  std::vector<std::pair<std::size_t, std::size_t>> plan;
  plan.reserve(n);
  switch (scheme.kind) {
    case CorruptionKind::kUU: {
      auto sources = draw.Sources(n, {});
      auto targets = draw.Targets(n, {});
      ResolveSelfMatches(corpus, sources, targets);
      for (std::size_t i = 0; i < n; ++i) plan.emplace_back(sources[i], targets[i]);
      break;
    }
    case CorruptionKind::kRR: {
      auto sources = draw.Sources(m, {});
      auto targets = draw.Targets(m, {});
      ResolveSelfMatches(corpus, sources, targets);
      const std::size_t reps = (n + m - 1) / m;
      for (std::size_t i = 0; i < n; ++i)
        plan.emplace_back(sources[i / reps], targets[i / reps]);
      break;
    }
    case CorruptionKind::kRU: {
      auto sources = draw.Sources(m, {});
      std::unordered_set<std::string> banned;
      for (std::size_t s : sources) banned.insert(corpus[s].reference);
      auto targets = draw.Targets(n, banned);
      for (std::size_t i = 0; i < n; ++i)
        plan.emplace_back(sources[i % m], targets[i]);
      break;
    }
    case CorruptionKind::kUR: {
      auto targets = draw.Targets(m, {});
      std::unordered_set<std::string> banned;
      for (std::size_t t : targets) banned.insert(corpus[t].reference);
      auto sources = draw.Sources(n, banned);
      for (std::size_t i = 0; i < n; ++i)
        plan.emplace_back(sources[i], targets[i % m]);
      break;
    }
  }

  CorruptionResult result;
  result.manifest.scheme = scheme;
  std::vector<Utterance> utterances = corpus.utterances();
  utterances.reserve(corpus.size() + n);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Utterance &src = corpus[plan[i].first];
    const Utterance &tgt = corpus[plan[i].second];
    Utterance u;
    u.id = src.id + "#noise" + std::to_string(i);
    u.audio_path = src.audio_path;
    u.reference = tgt.reference;
    u.duration_s = src.duration_s;
    result.manifest.corrupted_ids.push_back(u.id);
    result.manifest.pairings.push_back(
        {u.id, src.id, tgt.id, tgt.reference, PairOrigin::kInjected});
    utterances.push_back(std::move(u));
  }
  std::string name = corpus.name() + "+" + std::string(CorruptionKindName(scheme.kind));
  result.corpus = Corpus(std::move(name), std::move(utterances));
  return result;
}

std::string CorruptionManifestToJson(const CorruptionManifest &manifest) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "halscope.corruption_manifest";
  j["schema_version"] = 1;
  ordered_json scheme;
  scheme["kind"] = CorruptionKindName(manifest.scheme.kind);
  if (manifest.scheme.fraction) scheme["fraction"] = *manifest.scheme.fraction;
  if (manifest.scheme.count) scheme["count"] = *manifest.scheme.count;
  scheme["rr_pair_count"] = manifest.scheme.rr_pair_count;
  scheme["seed"] = manifest.scheme.seed;
  j["scheme"] = std::move(scheme);
  j["corrupted_ids"] = manifest.corrupted_ids;
  ordered_json pairs = ordered_json::array();
  for (const Pairing &p : manifest.pairings) {
    ordered_json e;
    e["id"] = p.injected_id;
    e["source_id"] = p.source_id;
    e["target_id"] = p.target_id;
    e["target_text"] = p.target_text;
    e["origin"] = p.origin == PairOrigin::kInjected ? "INJECTED" : "REAL";
    pairs.push_back(std::move(e));
  }
  j["pairings"] = std::move(pairs);
  return j.dump(2) + "\n";
}

}  // namespace halscope
