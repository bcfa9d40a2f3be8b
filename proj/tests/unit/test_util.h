// tests/unit/test_util.h

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


// Helpers shared by the unit tests.

#ifndef HALSCOPE_TESTS_TEST_UTIL_H_
#define HALSCOPE_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace halscope::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("halscope-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void WriteFile(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Little-endian RIFF writer written independently of the library's WAV code.
class WavBytes {
 public:
  void U16(std::uint16_t v) { Put(&v, 2); }
  void U32(std::uint32_t v) { Put(&v, 4); }
  void Tag(const char *t) { bytes_.append(t, 4); }
  void Put(const void *p, std::size_t n) {
    bytes_.append(static_cast<const char *>(p), n);
  }
  const std::string &bytes() const { return bytes_; }

  /// Canonical 44-byte header followed by |data|.
  static std::string Make(std::uint16_t format, std::uint16_t channels,
                          std::uint32_t rate, std::uint16_t bits,
                          const std::string &data) {
    WavBytes w;
    w.Tag("RIFF");
    w.U32(static_cast<std::uint32_t>(36 + data.size()));
    w.Tag("WAVE");
    w.Tag("fmt ");
    w.U32(16);
    w.U16(format);
    w.U16(channels);
    w.U32(rate);
    w.U32(rate * channels * bits / 8);
    w.U16(static_cast<std::uint16_t>(channels * bits / 8));
    w.U16(bits);
    w.Tag("data");
    w.U32(static_cast<std::uint32_t>(data.size()));
    w.bytes_ += data;
    return w.bytes_;
  }

 private:
  std::string bytes_;
};

inline std::string Int16Data(const std::vector<std::int16_t> &samples) {
  std::string s(samples.size() * 2, '\0');
  std::memcpy(s.data(), samples.data(), s.size());
  return s;
}

inline std::string Float32Data(const std::vector<float> &samples) {
  std::string s(samples.size() * 4, '\0');
  std::memcpy(s.data(), samples.data(), s.size());
  return s;
}

/// Random token sequence over a small alphabet.
inline std::vector<std::string> RandomTokens(std::mt19937_64 &rng, int max_len,
                                             int alphabet) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::vector<std::string> out(len(rng));
  for (auto &t : out) t = std::string(1, static_cast<char>('a' + sym(rng)));
  return out;
}

}  // namespace halscope::testing

#endif  // HALSCOPE_TESTS_TEST_UTIL_H_
