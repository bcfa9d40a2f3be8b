// include/halscope/protocol.h

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


// Newline-delimited JSON request/response protocol shared by transcription
// backends and perplexity services.
//
// A transcription server first writes {"hello":"asr-backend","version":1}.
// Requests carry an integer "id"; responses echo it and may arrive in any
// order. Transcription requests ({"op":"transcribe"}) hold "pcm_f32_base64"
// (little-endian float32 mono) plus "sample_rate", or an "audio_path", and
// optionally the "utterance_id". A response has "transcript" or "error". Perplexity requests are {"id","op":"ppl","text"} answered by
// {"id","ppl"}.

#ifndef HALSCOPE_PROTOCOL_H_
#define HALSCOPE_PROTOCOL_H_

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "halscope/channel.h"

namespace halscope {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::string_view kAsrHelloRole = "asr-backend";
inline constexpr std::string_view kLmHelloRole = "lm-backend";

std::string Base64Encode(std::span<const unsigned char> bytes);
/// Throws ProtocolViolation on malformed input.
std::vector<unsigned char> Base64Decode(std::string_view text);

std::string EncodePcm(std::span<const float> samples);
/// Throws ProtocolViolation on malformed input.
std::vector<float> DecodePcm(std::string_view base64);

std::string HelloLine(std::string_view role);

struct ClientOptions {
  /// Reconnect-and-resend attempts after the first failure.
  int max_retries = 2;
  std::chrono::milliseconds timeout{30000};
  /// If set, the first line after connecting must be this hello.
  std::optional<std::string> required_hello;
};

/// Pipelined JSON-lines client. Not thread-safe; use one per worker.
class JsonLinesClient {
 public:
  JsonLinesClient(ChannelFactory factory, std::string description,
                  ClientOptions options);

  /// Sends every request (their "id" fields are overwritten) before reading,
  /// and returns the responses in request order. On EOF or timeout the
  /// connection is re-established and unanswered requests are resent.
  /// Throws BackendUnreachable once retries run out and ProtocolViolation on
  /// malformed or unmatched responses.
  std::vector<nlohmann::json> Call(std::vector<nlohmann::json> requests);

  const std::string &description() const { return description_; }

 private:
  void Connect();
  void Disconnect() { channel_.reset(); }

  ChannelFactory factory_;
  std::string description_;
  ClientOptions options_;
  std::unique_ptr<LineChannel> channel_;
  std::int64_t next_id_ = 1;
};

/// Maps one request to one response; the "id" is copied by the server loop.
using RequestHandler = std::function<nlohmann::json(const nlohmann::json &)>;

/// Writes the hello line (if |hello_role| is non-empty), then answers
/// requests until EOF. Malformed lines get an error response with a null id.
void ServeChannel(LineChannel &channel, const RequestHandler &handler,
                  std::string_view hello_role);

}  // namespace halscope

#endif  // HALSCOPE_PROTOCOL_H_
