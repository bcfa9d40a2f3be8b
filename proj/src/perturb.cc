// src/perturb.cc

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

#include "halscope/perturb.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "halscope/errors.h"

namespace halscope {

void NoiseSpec::Validate() const {
  if (!(amplitude > 0.0 && amplitude <= 1.0))
    throw Error(Errc::kInvalidConfig, "noise amplitude must be in (0, 1]");
  if (placement == NoisePlacement::kBegin) {
    if (!duration_s || !(*duration_s > 0.0) || !std::isfinite(*duration_s))
      throw Error(Errc::kInvalidConfig,
                  "begin placement needs a positive duration");
  } else if (duration_s) {
    throw Error(Errc::kInvalidConfig,
                "duration only applies to begin placement");
  }
}

std::string NoiseSpec::ToString() const {
  std::ostringstream ss;
  ss << "NoiseSpec{placement=" << PlacementName(placement)
     << " amplitude=" << amplitude;
  if (duration_s) ss << " duration_s=" << *duration_s;
  ss << " mode=" << ModeName(mode) << " seed=" << seed << '}';
  return ss.str();
}

std::string_view PlacementName(NoisePlacement p) {
  return p == NoisePlacement::kBegin ? "begin" : "whole";
}

std::string_view ModeName(NoiseMode m) {
  return m == NoiseMode::kAdd ? "add" : "replace";
}

NoisePlacement ParsePlacement(std::string_view s) {
  if (s == "begin") return NoisePlacement::kBegin;
  if (s == "whole") return NoisePlacement::kWhole;
  throw Error(Errc::kInvalidConfig, "unknown noise placement: " + std::string(s));
}

NoiseMode ParseMode(std::string_view s) {
  if (s == "add") return NoiseMode::kAdd;
  if (s == "replace") return NoiseMode::kReplace;
  throw Error(Errc::kInvalidConfig, "unknown noise mode: " + std::string(s));
}

std::vector<float> GenerateNoise(std::size_t n, double amplitude,
                                 std::uint64_t seed) {
  // mt19937_64 output is fully specified by the standard; the mapping to
  // [0, 1) is done by hand because std distributions are not portable.
  std::mt19937_64 rng(seed);
  std::vector<float> noise(n);
  for (float &x : noise) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = static_cast<float>(amplitude * (2.0 * u - 1.0));
  }
  return noise;
}

void MixNoise(std::span<float> region, std::span<const float> noise,
              NoiseMode mode) {
  const std::size_t n = std::min(region.size(), noise.size());
  if (mode == NoiseMode::kReplace) {
    std::copy_n(noise.begin(), n, region.begin());
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    region[i] = std::clamp(region[i] + noise[i], -1.0f, 1.0f);
}

std::size_t DurationToSamples(double duration_s, int sample_rate) {
  return static_cast<std::size_t>(std::floor(duration_s * sample_rate + 0.5));
}

Waveform InjectBegin(const Waveform &w, const NoiseSpec &spec) {
  if (w.Empty()) throw Error(Errc::kEmptyWaveform, "nothing to perturb");
  if (spec.placement != NoisePlacement::kBegin)
    throw Error(Errc::kInvalidConfig, "InjectBegin needs begin placement");
  spec.Validate();
  std::size_t k = DurationToSamples(*spec.duration_s, w.sample_rate);
  if (k < 1)
    throw Error(Errc::kInvalidConfig, "noise duration shorter than a sample");
  k = std::min(k, w.samples.size());
  Waveform out = w;
  std::vector<float> noise = GenerateNoise(k, spec.amplitude, spec.seed);
  MixNoise(std::span<float>(out.samples.data(), k), noise, spec.mode);
  return out;
}

Waveform InjectWhole(const Waveform &w, const NoiseSpec &spec) {
  if (w.Empty()) throw Error(Errc::kEmptyWaveform, "nothing to perturb");
  if (spec.placement != NoisePlacement::kWhole)
    throw Error(Errc::kInvalidConfig, "InjectWhole needs whole placement");
  spec.Validate();
  Waveform out = w;
  std::vector<float> noise =
      GenerateNoise(out.samples.size(), spec.amplitude, spec.seed);
  MixNoise(out.samples, noise, spec.mode);
  return out;
}

Waveform Perturb(const Waveform &w, const NoiseSpec &spec) {
  return spec.placement == NoisePlacement::kBegin ? InjectBegin(w, spec)
                                                  : InjectWhole(w, spec);
}

}  // namespace halscope
