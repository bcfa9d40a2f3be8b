// include/halscope/text.h

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

#ifndef HALSCOPE_TEXT_H_
#define HALSCOPE_TEXT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace halscope {

/// Lowercases ASCII letters, maps whitespace to a single space, deletes every
/// character outside [a-z0-9'] and trims. Idempotent.
std::string NormalizeText(std::string_view text);

/// Splits on runs of spaces/tabs/newlines. Does not normalize.
std::vector<std::string> Tokenize(std::string_view text);

std::string JoinTokens(std::span<const std::string> tokens);

/// 64-bit FNV-1a. Used wherever a hash must be stable across runs and
/// platforms (seed derivation, token ids).
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Per-item seed for corpus-level runs: order independent.
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key) {
  return seed ^ Fnv1a64(key);
}

}  // namespace halscope

#endif  // HALSCOPE_TEXT_H_
