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

#ifndef AUDIOPEDIA_BACKENDS_HPP_
#define AUDIOPEDIA_BACKENDS_HPP_

#include <span>
#include <string>

namespace audiopedia {

// The external model roles. Local deterministic implementations and HTTP
// clients both live in adapters.hpp. Implementations must be safe to call
// concurrently.

class SpeechRecognizer {
 public:
  virtual ~SpeechRecognizer() = default;
  virtual std::string transcribe(const std::string& audio_ref) const = 0;
};

class SpeechSynthesizer {
 public:
  virtual ~SpeechSynthesizer() = default;
  // Returns a reference to a mono 16 kHz 16-bit waveform.
  virtual std::string synthesize(const std::string& text) const = 0;
};

class Answerer {
 public:
  virtual ~Answerer() = default;
  virtual std::string answer(const std::string& prompt, std::span<const std::string> audio_refs) const = 0;
};

}  // namespace audiopedia

#endif  // AUDIOPEDIA_BACKENDS_HPP_
