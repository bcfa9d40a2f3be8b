// src/text.cc

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

#include "halscope/text.h"

#include "halscope/errors.h"

namespace halscope {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kMissingFile: return "MissingFile";
    case Errc::kMalformedLine: return "MalformedLine";
    case Errc::kDuplicateId: return "DuplicateId";
    case Errc::kUnsupportedFormat: return "UnsupportedFormat";
    case Errc::kCorruptHeader: return "CorruptHeader";
    case Errc::kEmptyAudio: return "EmptyAudio";
    case Errc::kEmptyReference: return "EmptyReference";
    case Errc::kZeroReferenceLength: return "ZeroReferenceLength";
    case Errc::kUnfittedVectorizer: return "UnfittedVectorizer";
    case Errc::kEmptyTrainingText: return "EmptyTrainingText";
    case Errc::kInvalidSmoothing: return "InvalidSmoothing";
    case Errc::kEmptySentence: return "EmptySentence";
    case Errc::kProviderFailure: return "ProviderFailure";
    case Errc::kNonFiniteInput: return "NonFiniteInput";
    case Errc::kEmptyWaveform: return "EmptyWaveform";
    case Errc::kCorpusTooSmall: return "CorpusTooSmall";
    case Errc::kInvalidVolume: return "InvalidVolume";
    case Errc::kBackendUnreachable: return "BackendUnreachable";
    case Errc::kProtocolViolation: return "ProtocolViolation";
    case Errc::kBackendError: return "BackendError";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kEmptyCollection: return "EmptyCollection";
    case Errc::kEmptyBinSpec: return "EmptyBinSpec";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::string NormalizeText(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char raw : text) {
    char c = raw;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'';
    if (!keep) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace halscope
