// Copyright 2026 The Audiopedia Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUDIOPEDIA_ADAPTERS_HPP_
#define AUDIOPEDIA_ADAPTERS_HPP_

#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "audiopedia/backends.hpp"
#include "audiopedia/text_encoding.hpp"

namespace audiopedia {

// Wire protocol, JSON bodies over HTTP:
//   POST /v1/asr     {"audio_ref": str} | {"audio_b64": str} -> {"text": str}
//   POST /v1/tts     {"text": str}                           -> {"audio_ref": str}
//   POST /v1/encode  {"texts": [str]}                        -> {"vectors": [[num]], "dim": int}
//   POST /v1/answer  {"prompt": str, "audio_refs": [str]}    -> {"text": str}
//   GET  /v1/health                                          -> {"status": "ok", "roles": [...]}
// Errors are non-2xx responses with {"error": str}.

enum class AdapterRole { kAsr, kTts, kEncode, kAnswer };

std::string_view role_name(AdapterRole role);
std::string_view role_path(AdapterRole role);

struct AdapterEndpoint {
  AdapterRole role = AdapterRole::kAsr;
  std::string base_url;
  int timeout_ms = 30000;
  int max_attempts = 3;
  int backoff_base_ms = 100;
  std::size_t max_in_flight = 4;
  // Send local audio files as base64 instead of by path.
  bool inline_audio = false;

  // Throws kInvalidArgument unless timeout > 0, attempts >= 1 and the URL
  // is http(s).
  void validate() const;
};

struct EndpointConfig {
  std::optional<AdapterEndpoint> asr;
  std::optional<AdapterEndpoint> tts;
  std::optional<AdapterEndpoint> encode;
  std::optional<AdapterEndpoint> answer;

  // {"asr": {"url", "timeout_ms", "max_attempts", "backoff_ms",
  //          "max_in_flight", "inline_audio"}, "tts": {...}, ...}
  static EndpointConfig from_json(const nlohmann::json& j);
  static EndpointConfig load(const std::filesystem::path& path);

  // AUDIOPEDIA_<ROLE>_URL, _TIMEOUT_MS and _ATTEMPTS replace file values.
  void apply_environment();

  const std::optional<AdapterEndpoint>& get(AdapterRole role) const;
  std::optional<AdapterEndpoint>& get(AdapterRole role);
};

// Serializes one call's request body; identical inputs give identical bytes.
std::string request_body(const nlohmann::json& payload);

// HTTP client for one endpoint. Retries connection failures, timeouts and
// 5xx/429 responses with exponential backoff; other statuses fail at once
// with kProtocolError. With one attempt the underlying error surfaces
// directly (kTimeout, kAdapterUnavailable, kProtocolError); after several
// failed attempts it is kExhaustedRetries. Safe for concurrent use; at most
// max_in_flight requests run at once.
class AdapterClient {
 public:
  explicit AdapterClient(AdapterEndpoint endpoint);

  const AdapterEndpoint& endpoint() const { return endpoint_; }
  nlohmann::json post(std::string_view path, const nlohmann::json& payload) const;
  nlohmann::json get(std::string_view path) const;

 private:
  nlohmann::json send(bool is_post, std::string_view path, const std::string& body) const;

  AdapterEndpoint endpoint_;
  std::string host_;    // scheme://host:port
  std::string prefix_;  // path prefix, may be empty
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  mutable std::size_t in_flight_ = 0;
};

std::string asr_call(const AdapterClient& client, const std::string& audio_ref);
std::string tts_call(const AdapterClient& client, const std::string& text);
// Throws kInvalidArgument on an empty list, kDimensionMismatch on ragged
// or miscounted vectors.
std::vector<SparseVector> encode_call(const AdapterClient& client, const std::vector<std::string>& texts);
std::string answer_call(const AdapterClient& client, const std::string& prompt,
                        std::span<const std::string> audio_refs);
std::vector<std::string> health_call(const AdapterClient& client);

// Remote backends.

class RemoteSpeechRecognizer final : public SpeechRecognizer {
 public:
  explicit RemoteSpeechRecognizer(AdapterEndpoint endpoint) : client_(std::move(endpoint)) {}
  std::string transcribe(const std::string& audio_ref) const override { return asr_call(client_, audio_ref); }

 private:
  AdapterClient client_;
};

class RemoteSpeechSynthesizer final : public SpeechSynthesizer {
 public:
  explicit RemoteSpeechSynthesizer(AdapterEndpoint endpoint) : client_(std::move(endpoint)) {}
  std::string synthesize(const std::string& text) const override { return tts_call(client_, text); }

 private:
  AdapterClient client_;
};

class RemoteTextEncoder final : public TextEncoder {
 public:
  explicit RemoteTextEncoder(AdapterEndpoint endpoint) : client_(std::move(endpoint)) {}
  std::vector<SparseVector> encode_batch(std::span<const std::string> texts) const override;

 private:
  AdapterClient client_;
};

class RemoteAnswerer final : public Answerer {
 public:
  explicit RemoteAnswerer(AdapterEndpoint endpoint) : client_(std::move(endpoint)) {}
  std::string answer(const std::string& prompt, std::span<const std::string> audio_refs) const override {
    return answer_call(client_, prompt, audio_refs);
  }

 private:
  AdapterClient client_;
};

// A provider that ignores the corpus and always returns the remote encoder.
EncoderProvider remote_encoder_provider(AdapterEndpoint endpoint);

// Local deterministic backends.

// Returns the sentence carried by a "text-proxy:" ref; any other ref fails
// with kTranscriptionFailed.
class TextProxyRecognizer final : public SpeechRecognizer {
 public:
  std::string transcribe(const std::string& audio_ref) const override;
};

// "tts-stub:<fnv1a-64 of text>.wav"; empty text fails with kProtocolError
// (status 400) like the service would.
class SentinelSynthesizer final : public SpeechSynthesizer {
 public:
  std::string synthesize(const std::string& text) const override;
};

// Bag of characters: counts of a-z (case-folded), 0-9, and one bucket for
// any other non-space byte. Matches the stub encoder of the reference server.
class CharCountEncoder final : public TextEncoder {
 public:
  static constexpr std::size_t kDimension = 37;
  std::vector<SparseVector> encode_batch(std::span<const std::string> texts) const override;
  static std::vector<double> dense(std::string_view text);
};

}  // namespace audiopedia

#endif  // AUDIOPEDIA_ADAPTERS_HPP_
