// src/protocol.cc

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


#include "halscope/protocol.h"

#include <cstring>
#include <map>
#include <openssl/evp.h>

#include "halscope/errors.h"

namespace halscope {

using nlohmann::json;

std::string Base64Encode(std::span<const unsigned char> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char *>(out.data()),
                          bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<unsigned char> Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0)
    throw Error(Errc::kProtocolViolation, "base64 length not a multiple of 4");
  std::vector<unsigned char> out(text.size() / 4 * 3 + 1);
  int n = EVP_DecodeBlock(out.data(),
                          reinterpret_cast<const unsigned char *>(text.data()),
                          static_cast<int>(text.size()));
  if (n < 0) throw Error(Errc::kProtocolViolation, "invalid base64");
  // DecodeBlock keeps the padding bytes as zeros; trim them.
  std::size_t pad = 0;
  if (!text.empty() && text.back() == '=') ++pad;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

std::string EncodePcm(std::span<const float> samples) {
  static_assert(sizeof(float) == 4);
  std::vector<unsigned char> bytes(samples.size() * 4);
  if (!samples.empty()) std::memcpy(bytes.data(), samples.data(), bytes.size());
  return Base64Encode(bytes);
}

std::vector<float> DecodePcm(std::string_view base64) {
  std::vector<unsigned char> bytes = Base64Decode(base64);
  if (bytes.size() % 4 != 0)
    throw Error(Errc::kProtocolViolation, "pcm payload not float32 aligned");
  std::vector<float> samples(bytes.size() / 4);
  if (!samples.empty()) std::memcpy(samples.data(), bytes.data(), bytes.size());
  return samples;
}

std::string HelloLine(std::string_view role) {
  json j;
  j["hello"] = role;
  j["version"] = kProtocolVersion;
  return j.dump();
}

JsonLinesClient::JsonLinesClient(ChannelFactory factory,
                                 std::string description,
                                 ClientOptions options)
    : factory_(std::move(factory)),
      description_(std::move(description)),
      options_(std::move(options)) {}

void JsonLinesClient::Connect() {
  channel_ = factory_();
  if (!options_.required_hello) return;
  ReadResult r = channel_->ReadLine(options_.timeout);
  if (r.status != ReadResult::Status::kLine) {
    channel_.reset();
    throw Error(Errc::kBackendUnreachable,
                description_ + ": no handshake from backend");
  }
  json hello = json::parse(r.line, nullptr, false);
  if (hello.is_discarded() || !hello.is_object() ||
      hello.value("hello", "") != *options_.required_hello ||
      hello.value("version", -1) != kProtocolVersion) {
    channel_.reset();
    throw Error(Errc::kProtocolViolation,
                description_ + ": bad handshake: " + r.line);
  }
}

std::vector<json> JsonLinesClient::Call(std::vector<json> requests) {
  std::vector<json> responses(requests.size());
  std::map<std::int64_t, std::size_t> pending;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    requests[i]["id"] = next_id_;
    pending.emplace(next_id_++, i);
  }
  int failures = 0;
  std::string last_failure;
  while (!pending.empty()) {
    if (failures > options_.max_retries)
      throw Error(Errc::kBackendUnreachable,
                  description_ + ": " + last_failure + " (after " +
                      std::to_string(failures) + " attempts)");
    try {
      if (!channel_) Connect();
    } catch (const Error &e) {
      if (e.code() != Errc::kBackendUnreachable) throw;
      ++failures;
      last_failure = e.message();
      continue;
    }
    bool sent = true;
    for (const auto &[id, index] : pending) {
      if (!channel_->WriteLine(requests[index].dump())) {
        sent = false;
        break;
      }
    }
    while (sent && !pending.empty()) {
      ReadResult r = channel_->ReadLine(options_.timeout);
      if (r.status != ReadResult::Status::kLine) {
        last_failure = r.status == ReadResult::Status::kEof
                           ? "connection closed"
                           : "timed out waiting for a response";
        sent = false;
        break;
      }
      if (r.line.empty()) continue;
      json msg = json::parse(r.line, nullptr, false);
      if (msg.is_discarded() || !msg.is_object())
        throw Error(Errc::kProtocolViolation,
                    description_ + ": malformed response: " + r.line);
      if (msg.contains("hello") && !msg.contains("id")) continue;
      if (!msg.contains("id") || !msg["id"].is_number_integer())
        throw Error(Errc::kProtocolViolation,
                    description_ + ": response without integer id: " + r.line);
      auto it = pending.find(msg["id"].get<std::int64_t>());
      if (it == pending.end())
        throw Error(Errc::kProtocolViolation,
                    description_ + ": response for unknown id: " + r.line);
      responses[it->second] = std::move(msg);
      pending.erase(it);
    }
    if (!sent) {
      if (last_failure.empty()) last_failure = "write failed";
      ++failures;
      Disconnect();
    }
  }
  return responses;
}

void ServeChannel(LineChannel &channel, const RequestHandler &handler,
                  std::string_view hello_role) {
  if (!hello_role.empty() && !channel.WriteLine(HelloLine(hello_role))) return;
  for (;;) {
    ReadResult r = channel.ReadLine(std::chrono::milliseconds(-1));
    if (r.status != ReadResult::Status::kLine) return;
    if (r.line.empty()) continue;
    json request = json::parse(r.line, nullptr, false);
    json response;
    if (request.is_discarded() || !request.is_object()) {
      response = {{"id", nullptr}, {"error", "malformed request"}};
    } else {
      try {
        response = handler(request);
      } catch (const std::exception &e) {
        response = json::object();
        response["error"] = e.what();
      }
      response["id"] = request.contains("id") ? request["id"] : json(nullptr);
    }
    if (!channel.WriteLine(response.dump())) return;
  }
}

}  // namespace halscope
