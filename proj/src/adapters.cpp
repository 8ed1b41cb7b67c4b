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

#include "audiopedia/adapters.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <utility>

#include <httplib.h>

#include "audiopedia/error.hpp"
#include "audiopedia/strings.hpp"
#include "audiopedia/synth.hpp"

namespace audiopedia {

namespace {

using json = nlohmann::json;

constexpr AdapterRole kRoles[] = {AdapterRole::kAsr, AdapterRole::kTts, AdapterRole::kEncode, AdapterRole::kAnswer};

bool transient_status(int status) { return status == 429 || status >= 500; }

std::string error_text(const std::string& body) {
  try {
    const json j = json::parse(body);
    if (j.is_object() && j.contains("error") && j["error"].is_string()) return j["error"].get<std::string>();
  } catch (const json::exception&) {
  }
  return body;
}

std::string require_string(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::kProtocolError, std::string("response lacks string field '") + field + "'", 200);
  }
  return it->get<std::string>();
}

class InFlightSlot {
 public:
  InFlightSlot(std::mutex& mu, std::condition_variable& cv, std::size_t& count, std::size_t cap)
      : mu_(mu), cv_(cv), count_(count) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return count_ < cap; });
    ++count_;
  }
  ~InFlightSlot() {
    {
      std::lock_guard lock(mu_);
      --count_;
    }
    cv_.notify_one();
  }
  InFlightSlot(const InFlightSlot&) = delete;
  InFlightSlot& operator=(const InFlightSlot&) = delete;

 private:
  std::mutex& mu_;
  std::condition_variable& cv_;
  std::size_t& count_;
};

}  // namespace

std::string_view role_name(AdapterRole role) {
  switch (role) {
    case AdapterRole::kAsr: return "asr";
    case AdapterRole::kTts: return "tts";
    case AdapterRole::kEncode: return "encode";
    case AdapterRole::kAnswer: return "answer";
  }
  return "";
}

std::string_view role_path(AdapterRole role) {
  switch (role) {
    case AdapterRole::kAsr: return "/v1/asr";
    case AdapterRole::kTts: return "/v1/tts";
    case AdapterRole::kEncode: return "/v1/encode";
    case AdapterRole::kAnswer: return "/v1/answer";
  }
  return "";
}

void AdapterEndpoint::validate() const {
  if (timeout_ms <= 0) throw Error(ErrorCode::kInvalidArgument, "endpoint timeout must be positive");
  if (max_attempts < 1) throw Error(ErrorCode::kInvalidArgument, "endpoint needs at least one attempt");
  if (max_in_flight < 1) throw Error(ErrorCode::kInvalidArgument, "endpoint in-flight cap must be positive");
  if (base_url.rfind("http://", 0) != 0 && base_url.rfind("https://", 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint URL must be http(s): '" + base_url + "'");
  }
}

EndpointConfig EndpointConfig::from_json(const json& j) {
  EndpointConfig config;
  for (AdapterRole role : kRoles) {
    const auto it = j.find(std::string(role_name(role)));
    if (it == j.end()) continue;
    AdapterEndpoint e;
    e.role = role;
    try {
      e.base_url = it->at("url").get<std::string>();
      e.timeout_ms = it->value("timeout_ms", e.timeout_ms);
      e.max_attempts = it->value("max_attempts", e.max_attempts);
      e.backoff_base_ms = it->value("backoff_ms", e.backoff_base_ms);
      e.max_in_flight = it->value("max_in_flight", e.max_in_flight);
      e.inline_audio = it->value("inline_audio", e.inline_audio);
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::kInvalidArgument, std::string("bad endpoint config: ") + ex.what());
    }
    e.validate();
    config.get(role) = e;
  }
  return config;
}

EndpointConfig EndpointConfig::load(const std::filesystem::path& path) {
  try {
    return from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, path.string() + ": " + e.what());
  }
}

void EndpointConfig::apply_environment() {
  for (AdapterRole role : kRoles) {
    std::string upper(role_name(role));
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const std::string base = "AUDIOPEDIA_" + upper;
    auto& slot = get(role);
    if (const char* url = std::getenv((base + "_URL").c_str())) {
      if (!slot) {
        slot = AdapterEndpoint{};
        slot->role = role;
      }
      slot->base_url = url;
    }
    if (!slot) continue;
    if (const char* t = std::getenv((base + "_TIMEOUT_MS").c_str())) slot->timeout_ms = std::atoi(t);
    if (const char* a = std::getenv((base + "_ATTEMPTS").c_str())) slot->max_attempts = std::atoi(a);
    slot->validate();
  }
}

const std::optional<AdapterEndpoint>& EndpointConfig::get(AdapterRole role) const {
  switch (role) {
    case AdapterRole::kAsr: return asr;
    case AdapterRole::kTts: return tts;
    case AdapterRole::kEncode: return encode;
    case AdapterRole::kAnswer: return answer;
  }
  return asr;
}

std::optional<AdapterEndpoint>& EndpointConfig::get(AdapterRole role) {
  return const_cast<std::optional<AdapterEndpoint>&>(std::as_const(*this).get(role));
}

std::string request_body(const json& payload) { return payload.dump(); }

AdapterClient::AdapterClient(AdapterEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  endpoint_.validate();
  const std::size_t scheme_end = endpoint_.base_url.find("://") + 3;
  const std::size_t path_start = endpoint_.base_url.find('/', scheme_end);
  host_ = endpoint_.base_url.substr(0, path_start);
  if (path_start != std::string::npos) {
    prefix_ = endpoint_.base_url.substr(path_start);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
}

json AdapterClient::post(std::string_view path, const json& payload) const {
  return send(true, path, request_body(payload));
}

json AdapterClient::get(std::string_view path) const { return send(false, path, {}); }

json AdapterClient::send(bool is_post, std::string_view path, const std::string& body) const {
  InFlightSlot slot(mu_, cv_, in_flight_, endpoint_.max_in_flight);
  const std::string target = prefix_ + std::string(path);
  const auto timeout = std::chrono::milliseconds(endpoint_.timeout_ms);

  std::optional<Error> last;
  for (int attempt = 1; attempt <= endpoint_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(std::chrono::milliseconds(endpoint_.backoff_base_ms) * (1 << (attempt - 2)));
    }
    httplib::Client cli(host_);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    auto res = is_post ? cli.Post(target, body, "application/json") : cli.Get(target);
    if (!res) {
      const auto err = res.error();
      const bool timed_out = err == httplib::Error::Read || err == httplib::Error::Write ||
                             err == httplib::Error::ConnectionTimeout;
      last = Error(timed_out ? ErrorCode::kTimeout : ErrorCode::kAdapterUnavailable,
                   host_ + target + ": " + httplib::to_string(err));
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      try {
        return json::parse(res->body);
      } catch (const json::exception&) {
        throw Error(ErrorCode::kProtocolError, host_ + target + ": response is not JSON", res->status);
      }
    }
    Error failure(ErrorCode::kProtocolError,
                  host_ + target + ": status " + std::to_string(res->status) + ": " + error_text(res->body),
                  res->status);
    if (!transient_status(res->status)) throw failure;
    last = failure;
  }
  if (endpoint_.max_attempts == 1) throw *last;
  throw Error(ErrorCode::kExhaustedRetries,
              std::to_string(endpoint_.max_attempts) + " attempts failed; last: " + last->what(), last->detail());
}

std::string asr_call(const AdapterClient& client, const std::string& audio_ref) {
  json payload;
  if (client.endpoint().inline_audio && std::filesystem::is_regular_file(audio_ref)) {
    payload["audio_b64"] = httplib::detail::base64_encode(read_file(audio_ref));
  } else {
    payload["audio_ref"] = audio_ref;
  }
  return require_string(client.post(role_path(AdapterRole::kAsr), payload), "text");
}

std::string tts_call(const AdapterClient& client, const std::string& text) {
  return require_string(client.post(role_path(AdapterRole::kTts), json{{"text", text}}), "audio_ref");
}

std::vector<SparseVector> encode_call(const AdapterClient& client, const std::vector<std::string>& texts) {
  if (texts.empty()) throw Error(ErrorCode::kInvalidArgument, "encode_call needs at least one text");
  const json res = client.post(role_path(AdapterRole::kEncode), json{{"texts", texts}});
  const auto vectors = res.find("vectors");
  if (vectors == res.end() || !vectors->is_array()) {
    throw Error(ErrorCode::kProtocolError, "response lacks 'vectors'", 200);
  }
  if (vectors->size() != texts.size()) {
    throw Error(ErrorCode::kDimensionMismatch, std::to_string(vectors->size()) + " vectors for " +
                                                   std::to_string(texts.size()) + " texts");
  }
  std::optional<std::size_t> dim;
  if (const auto d = res.find("dim"); d != res.end() && d->is_number_integer()) dim = d->get<std::size_t>();
  std::vector<SparseVector> out;
  for (const auto& v : *vectors) {
    if (!v.is_array()) throw Error(ErrorCode::kProtocolError, "vector is not an array", 200);
    if (!dim) dim = v.size();
    if (v.size() != *dim) {
      throw Error(ErrorCode::kDimensionMismatch, "vector of size " + std::to_string(v.size()) + ", expected " +
                                                     std::to_string(*dim));
    }
    std::vector<double> dense;
    dense.reserve(v.size());
    for (const auto& x : v) {
      if (!x.is_number()) throw Error(ErrorCode::kProtocolError, "non-numeric vector entry", 200);
      dense.push_back(x.get<double>());
    }
    out.push_back(SparseVector::from_dense(dense));
  }
  return out;
}

std::string answer_call(const AdapterClient& client, const std::string& prompt,
                        std::span<const std::string> audio_refs) {
  json refs = json::array();
  for (const auto& r : audio_refs) refs.push_back(r);
  return require_string(client.post(role_path(AdapterRole::kAnswer), json{{"prompt", prompt}, {"audio_refs", refs}}),
                        "text");
}

std::vector<std::string> health_call(const AdapterClient& client) {
  const json res = client.get("/v1/health");
  if (res.value("status", "") != "ok") throw Error(ErrorCode::kProtocolError, "health status is not ok", 200);
  return res.value("roles", std::vector<std::string>{});
}

std::vector<SparseVector> RemoteTextEncoder::encode_batch(std::span<const std::string> texts) const {
  if (texts.empty()) return {};
  return encode_call(client_, std::vector<std::string>(texts.begin(), texts.end()));
}

EncoderProvider remote_encoder_provider(AdapterEndpoint endpoint) {
  auto encoder = std::make_shared<const RemoteTextEncoder>(std::move(endpoint));
  return [encoder](std::span<const std::string>) -> std::shared_ptr<const TextEncoder> { return encoder; };
}

std::string TextProxyRecognizer::transcribe(const std::string& audio_ref) const {
  if (audio_ref.rfind(kTextProxyPrefix, 0) != 0) {
    throw Error(ErrorCode::kTranscriptionFailed, "not a text-proxy ref: '" + audio_ref + "'");
  }
  return audio_ref.substr(kTextProxyPrefix.size());
}

std::string SentinelSynthesizer::synthesize(const std::string& text) const {
  if (trim(text).empty()) throw Error(ErrorCode::kProtocolError, "text is empty", 400);
  return "tts-stub:" + hex64(fnv1a64(text)) + ".wav";
}

std::vector<double> CharCountEncoder::dense(std::string_view text) {
  std::vector<double> v(kDimension, 0.0);
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 'a' && c <= 'z') {
      v[c - 'a'] += 1;
    } else if (c >= 'A' && c <= 'Z') {
      v[c - 'A'] += 1;
    } else if (c >= '0' && c <= '9') {
      v[26 + (c - '0')] += 1;
    } else if (!std::isspace(c)) {
      v[36] += 1;
    }
  }
  return v;
}

std::vector<SparseVector> CharCountEncoder::encode_batch(std::span<const std::string> texts) const {
  std::vector<SparseVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(SparseVector::from_dense(dense(t)));
  return out;
}

}  // namespace audiopedia
