// src/audio.cc

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

#include "halscope/audio.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "halscope/errors.h"

namespace halscope {

static_assert(std::endian::native == std::endian::little,
              "WAV codec assumes a little-endian host");

bool Waveform::InRange() const {
  return std::all_of(samples.begin(), samples.end(),
                     [](float s) { return s >= -1.0f && s <= 1.0f; });
}

double MeanSquare(std::span<const float> samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (float s : samples) acc += static_cast<double>(s) * s;
  return acc / static_cast<double>(samples.size());
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
T ReadLe(const char *p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

struct ParsedHeader {
  WavInfo info;
  std::size_t data_offset = 0;
  std::size_t data_bytes = 0;
  int bits = 0;
};

std::string ReadFileBytes(const std::filesystem::path &path,
                          std::size_t limit = 0) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kMissingFile, path.string());
  if (limit == 0)
    return std::string(std::istreambuf_iterator<char>(in), {});
  std::string buf(limit, '\0');
  in.read(buf.data(), static_cast<std::streamsize>(limit));
  buf.resize(static_cast<std::size_t>(in.gcount()));
  return buf;
}

// |bytes| may be a prefix of the file when |header_only| is set.
ParsedHeader ParseHeader(const std::string &bytes, const std::string &name,
                         bool header_only) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0)
    throw Error(Errc::kCorruptHeader, name + ": not a RIFF/WAVE file");
  ParsedHeader h;
  bool have_fmt = false;
  std::uint16_t format = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    std::string id = bytes.substr(pos, 4);
    std::uint32_t size = ReadLe<std::uint32_t>(bytes.data() + pos + 4);
    std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + 16 > bytes.size())
        throw Error(Errc::kCorruptHeader, name + ": short fmt chunk");
      format = ReadLe<std::uint16_t>(bytes.data() + body);
      h.info.channels = ReadLe<std::uint16_t>(bytes.data() + body + 2);
      h.info.sample_rate =
          static_cast<int>(ReadLe<std::uint32_t>(bytes.data() + body + 4));
      h.bits = ReadLe<std::uint16_t>(bytes.data() + body + 14);
      if (format == kFormatExtensible) {
        if (size < 40 || body + 26 > bytes.size())
          throw Error(Errc::kCorruptHeader, name + ": short extensible fmt");
        // First two bytes of the subformat GUID carry the format tag.
        format = ReadLe<std::uint16_t>(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt)
        throw Error(Errc::kCorruptHeader, name + ": data before fmt");
      h.data_offset = body;
      h.data_bytes = size;
      if (!header_only && body + size > bytes.size())
        throw Error(Errc::kCorruptHeader, name + ": truncated data chunk");
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt || h.data_offset == 0)
    throw Error(Errc::kCorruptHeader, name + ": missing fmt or data chunk");
  if (h.info.channels <= 0 || h.info.sample_rate <= 0)
    throw Error(Errc::kCorruptHeader, name + ": bad channel count or rate");
  if (format == kFormatPcm && h.bits == 16) {
    h.info.encoding = SampleEncoding::kPcm16;
  } else if (format == kFormatFloat && h.bits == 32) {
    h.info.encoding = SampleEncoding::kFloat32;
  } else {
    throw Error(Errc::kUnsupportedFormat,
                name + ": format " + std::to_string(format) + " with " +
                    std::to_string(h.bits) + " bits per sample");
  }
  std::size_t frame_bytes =
      static_cast<std::size_t>(h.info.channels) * (h.bits / 8);
  h.info.frames = h.data_bytes / frame_bytes;
  return h;
}

}  // namespace

WavInfo ProbeWav(const std::filesystem::path &path) {
  // Headers of files we write are 44 bytes; leave room for extra chunks.
  std::string bytes = ReadFileBytes(path, 4096);
  return ParseHeader(bytes, path.string(), true).info;
}

WavFile ReadWav(const std::filesystem::path &path) {
  std::string bytes = ReadFileBytes(path);
  ParsedHeader h = ParseHeader(bytes, path.string(), false);
  if (h.info.frames == 0) throw Error(Errc::kEmptyAudio, path.string());

  WavFile out;
  out.info = h.info;
  out.waveform.sample_rate = h.info.sample_rate;
  out.waveform.samples.resize(h.info.frames);
  const char *data = bytes.data() + h.data_offset;
  const int channels = h.info.channels;
  for (std::uint64_t f = 0; f < h.info.frames; ++f) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      std::size_t idx = f * channels + c;
      if (h.info.encoding == SampleEncoding::kPcm16)
        acc += ReadLe<std::int16_t>(data + idx * 2) / 32768.0;
      else
        acc += ReadLe<float>(data + idx * 4);
    }
    out.waveform.samples[f] = static_cast<float>(acc / channels);
  }
  return out;
}

void WriteWav(const std::filesystem::path &path, const Waveform &waveform,
              SampleEncoding encoding) {
  const bool pcm = encoding == SampleEncoding::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(waveform.samples.size() * (bits / 8));
  std::string out;
  out.reserve(44 + data_bytes);
  auto put = [&out](auto v) {
    char buf[sizeof(v)];
    std::memcpy(buf, &v, sizeof(v));
    out.append(buf, sizeof(v));
  };
  out += "RIFF";
  put(static_cast<std::uint32_t>(36 + data_bytes));
  out += "WAVEfmt ";
  put(static_cast<std::uint32_t>(16));
  put(static_cast<std::uint16_t>(pcm ? kFormatPcm : kFormatFloat));
  put(static_cast<std::uint16_t>(1));
  put(static_cast<std::uint32_t>(waveform.sample_rate));
  put(static_cast<std::uint32_t>(waveform.sample_rate * (bits / 8)));
  put(static_cast<std::uint16_t>(bits / 8));
  put(bits);
  out += "data";
  put(data_bytes);
  for (float s : waveform.samples) {
    if (pcm) {
      double scaled = std::round(static_cast<double>(s) * 32768.0);
      scaled = std::clamp(scaled, -32768.0, 32767.0);
      put(static_cast<std::int16_t>(scaled));
    } else {
      put(s);
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::kIoError, "cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(Errc::kIoError, "short write to " + path.string());
}

}  // namespace halscope
