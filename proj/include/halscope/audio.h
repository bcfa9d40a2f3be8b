// include/halscope/audio.h

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

#ifndef HALSCOPE_AUDIO_H_
#define HALSCOPE_AUDIO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace halscope {

/// Mono audio on the digital amplitude scale [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 16000;

  double DurationSeconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
  bool Empty() const { return samples.empty(); }
  /// True iff every sample lies in [-1, 1].
  bool InRange() const;
};

/// Mean of squared samples over a range; 0 for an empty range.
double MeanSquare(std::span<const float> samples);

enum class SampleEncoding { kPcm16, kFloat32 };

struct WavInfo {
  SampleEncoding encoding = SampleEncoding::kPcm16;
  int sample_rate = 0;
  int channels = 0;
  std::uint64_t frames = 0;
};

struct WavFile {
  Waveform waveform;
  WavInfo info;
};

/// Reads a RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float samples.
/// Multi-channel audio is downmixed by averaging channels; 16-bit samples are
/// divided by 32768.
WavFile ReadWav(const std::filesystem::path &path);

/// Header-only probe (no sample decoding).
WavInfo ProbeWav(const std::filesystem::path &path);

inline Waveform LoadAudio(const std::filesystem::path &path) {
  return ReadWav(path).waveform;
}

/// Writes a mono WAV. 16-bit output clamps to the representable range.
void WriteWav(const std::filesystem::path &path, const Waveform &waveform,
              SampleEncoding encoding = SampleEncoding::kPcm16);

}  // namespace halscope

#endif  // HALSCOPE_AUDIO_H_
