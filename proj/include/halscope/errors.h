// include/halscope/errors.h

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

#ifndef HALSCOPE_ERRORS_H_
#define HALSCOPE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace halscope {

/// Failure categories raised across the toolkit. Every thrown halscope::Error
/// carries exactly one of these.
enum class Errc {
  kMissingFile,
  kMalformedLine,
  kDuplicateId,
  kUnsupportedFormat,
  kCorruptHeader,
  kEmptyAudio,
  kEmptyReference,
  kZeroReferenceLength,
  kUnfittedVectorizer,
  kEmptyTrainingText,
  kInvalidSmoothing,
  kEmptySentence,
  kProviderFailure,
  kNonFiniteInput,
  kEmptyWaveform,
  kCorpusTooSmall,
  kInvalidVolume,
  kBackendUnreachable,
  kProtocolViolation,
  kBackendError,
  kInvalidConfig,
  kEmptyCollection,
  kEmptyBinSpec,
  kIoError,
};

std::string_view ErrcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string &message)
      : std::runtime_error(std::string(ErrcName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  Errc code() const noexcept { return code_; }
  /// The message without the category prefix.
  const std::string &message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace halscope

#endif  // HALSCOPE_ERRORS_H_
