// src/backend.cc

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


#include "halscope/backend.h"

#include <cmath>

#include "halscope/errors.h"
#include "halscope/text.h"

namespace halscope {

using nlohmann::json;

TranscriptionResult Backend::Transcribe(const TranscriptionRequest &request) {
  return TranscribeBatch(std::span<const TranscriptionRequest>(&request, 1))
      .front();
}

ExternalBackend::ExternalBackend(ChannelFactory factory,
                                 std::string description,
                                 ClientOptions options)
    : client_(std::move(factory), std::move(description), [&] {
        if (!options.required_hello)
          options.required_hello = std::string(kAsrHelloRole);
        return options;
      }()) {}

std::vector<TranscriptionResult> ExternalBackend::TranscribeBatch(
    std::span<const TranscriptionRequest> requests) {
  std::vector<json> wire;
  wire.reserve(requests.size());
  for (const TranscriptionRequest &r : requests) {
    json j;
    j["op"] = "transcribe";
    if (r.audio) {
      j["pcm_f32_base64"] = EncodePcm(r.audio->samples);
      j["sample_rate"] = r.audio->sample_rate;
    } else {
      j["audio_path"] = r.audio_path;
    }
    if (!r.utterance_id.empty()) j["utterance_id"] = r.utterance_id;
    wire.push_back(std::move(j));
  }
  std::vector<json> replies = client_.Call(std::move(wire));
  std::vector<TranscriptionResult> out;
  out.reserve(replies.size());
  for (const json &reply : replies) {
    TranscriptionResult result;
    if (reply.contains("error") && !reply["error"].is_null()) {
      result.error = reply["error"].is_string() ? reply["error"].get<std::string>()
                                                : reply["error"].dump();
    } else if (reply.contains("transcript") && reply["transcript"].is_string()) {
      result.text = reply["transcript"].get<std::string>();
    } else {
      throw Error(Errc::kProtocolViolation,
                  Describe() + ": response has neither transcript nor error: " +
                      reply.dump());
    }
    out.push_back(std::move(result));
  }
  return out;
}

ExternalPerplexityProvider::ExternalPerplexityProvider(ChannelFactory factory,
                                                       std::string description,
                                                       ClientOptions options)
    : client_(std::move(factory), std::move(description), std::move(options)) {}

double ExternalPerplexityProvider::SentencePerplexity(
    std::span<const std::string> tokens) const {
  json request;
  request["op"] = "ppl";
  request["text"] = JoinTokens(tokens);
  json reply;
  {
    std::lock_guard<std::mutex> lock(mu_);
    reply = client_.Call({std::move(request)}).front();
  }
  if (reply.contains("error") && !reply["error"].is_null())
    throw Error(Errc::kProviderFailure, client_.description() + ": " +
                                            reply["error"].dump());
  if (!reply.contains("ppl") || !reply["ppl"].is_number())
    throw Error(Errc::kProtocolViolation,
                client_.description() + ": response without ppl: " +
                    reply.dump());
  return reply["ppl"].get<double>();
}

ChannelFactory ParseChannelSpec(const std::string &spec) {
  if (spec.rfind("exec:", 0) == 0) {
    std::string command = spec.substr(5);
    if (command.empty()) throw Error(Errc::kInvalidConfig, "empty exec command");
    return [command] { return SpawnProcessChannel(command); };
  }
  if (spec.rfind("tcp:", 0) == 0) {
    std::string address = spec.substr(4);
    return [address] { return ConnectTcpChannel(address); };
  }
  throw Error(Errc::kInvalidConfig,
              "expected exec:<command> or tcp:<host:port>, got " + spec);
}

}  // namespace halscope
