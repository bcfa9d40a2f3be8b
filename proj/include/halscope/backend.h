// include/halscope/backend.h

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


#ifndef HALSCOPE_BACKEND_H_
#define HALSCOPE_BACKEND_H_

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "halscope/audio.h"
#include "halscope/channel.h"
#include "halscope/language_model.h"
#include "halscope/protocol.h"

namespace halscope {

struct TranscriptionRequest {
  std::string utterance_id;
  /// Not owned; must outlive the call.
  const Waveform *audio = nullptr;
  /// Sent instead of samples when |audio| is null.
  std::string audio_path;
};

struct TranscriptionResult {
  std::string text;
  /// Set when the backend reported a per-utterance failure.
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

/// A speech recognizer. Implementations need not be thread-safe; callers use
/// one instance per worker.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual TranscriptionResult Transcribe(const TranscriptionRequest &request);
  virtual std::vector<TranscriptionResult> TranscribeBatch(
      std::span<const TranscriptionRequest> requests) = 0;
  virtual std::string Describe() const = 0;
};

using BackendFactory = std::function<std::unique_ptr<Backend>()>;

/// Out-of-process recognizer speaking the JSON-lines protocol.
class ExternalBackend : public Backend {
 public:
  ExternalBackend(ChannelFactory factory, std::string description,
                  ClientOptions options = {});

  std::vector<TranscriptionResult> TranscribeBatch(
      std::span<const TranscriptionRequest> requests) override;
  std::string Describe() const override { return client_.description(); }

 private:
  JsonLinesClient client_;
};

/// Perplexity from an external service. Thread-safe (calls serialize).
class ExternalPerplexityProvider : public PerplexityProvider {
 public:
  ExternalPerplexityProvider(ChannelFactory factory, std::string description,
                             ClientOptions options = {});

  double SentencePerplexity(std::span<const std::string> tokens) const override;

 private:
  mutable std::mutex mu_;
  mutable JsonLinesClient client_;
};

/// "exec:<command>" or "tcp:<host:port>". Throws InvalidConfig otherwise.
ChannelFactory ParseChannelSpec(const std::string &spec);

}  // namespace halscope

#endif  // HALSCOPE_BACKEND_H_
