// include/halscope/perturb.h

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

#ifndef HALSCOPE_PERTURB_H_
#define HALSCOPE_PERTURB_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halscope/audio.h"

namespace halscope {

enum class NoisePlacement { kBegin, kWhole };
enum class NoiseMode { kAdd, kReplace };

/// Random-noise perturbation. Noise is uniform on [-amplitude, amplitude].
struct NoiseSpec {
  NoisePlacement placement = NoisePlacement::kBegin;
  double amplitude = 0.5;
  /// Seconds of noise at the start; required iff placement is kBegin.
  std::optional<double> duration_s = 1.0;
  NoiseMode mode = NoiseMode::kAdd;
  std::uint64_t seed = 0;

  static NoiseSpec Begin(double amplitude, double duration_s,
                         NoiseMode mode = NoiseMode::kAdd,
                         std::uint64_t seed = 0) {
    return {NoisePlacement::kBegin, amplitude, duration_s, mode, seed};
  }
  static NoiseSpec Whole(double amplitude, NoiseMode mode = NoiseMode::kAdd,
                         std::uint64_t seed = 0) {
    return {NoisePlacement::kWhole, amplitude, std::nullopt, mode, seed};
  }

  /// Throws InvalidConfig on amplitude outside (0, 1] or a duration that does
  /// not match the placement.
  void Validate() const;
  std::string ToString() const;
};

std::string_view PlacementName(NoisePlacement p);
std::string_view ModeName(NoiseMode m);
NoisePlacement ParsePlacement(std::string_view s);
NoiseMode ParseMode(std::string_view s);

/// n i.i.d. draws uniform on [-amplitude, amplitude]; identical for identical
/// (n, amplitude, seed).
std::vector<float> GenerateNoise(std::size_t n, double amplitude,
                                 std::uint64_t seed);

/// In-place mix of |noise| into |region|. kAdd clips the sum to [-1, 1];
/// kReplace overwrites.
void MixNoise(std::span<float> region, std::span<const float> noise,
              NoiseMode mode);

/// Number of samples covered by |duration_s| at |sample_rate| (round half
/// up).
std::size_t DurationToSamples(double duration_s, int sample_rate);

/// Perturbs the first round(duration * rate) samples (truncated to the
/// waveform length); samples after that are bit-identical to the input.
/// Throws EmptyWaveform.
Waveform InjectBegin(const Waveform &w, const NoiseSpec &spec);

/// Perturbs every sample. Throws EmptyWaveform.
Waveform InjectWhole(const Waveform &w, const NoiseSpec &spec);

/// Dispatches on spec.placement.
Waveform Perturb(const Waveform &w, const NoiseSpec &spec);

}  // namespace halscope

#endif  // HALSCOPE_PERTURB_H_
