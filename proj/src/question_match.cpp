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

#include "audiopedia/question_match.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "audiopedia/text_encoding.hpp"

namespace audiopedia {

namespace {

int count_matched(const std::vector<std::string>& needles, const std::vector<std::string>& hay) {
  int n = 0;
  for (const auto& t : needles) {
    if (std::any_of(hay.begin(), hay.end(), [&](const std::string& q) { return tokens_match(t, q); })) {
      ++n;
    }
  }
  return n;
}

}  // namespace

bool tokens_match(std::string_view a, std::string_view b) {
  if (a == b) return true;
  if (a.size() > b.size()) std::swap(a, b);
  return a.size() >= 4 && b.substr(0, a.size()) == a;
}

MatchScore match_score(std::string_view question, std::string_view relation, std::string_view object) {
  const auto q = tokenize(question);
  return MatchScore{count_matched(tokenize(relation), q), count_matched(tokenize(object), q)};
}

bool contains_token_sequence(std::string_view text, std::string_view phrase) {
  const auto hay = tokenize(text);
  const auto needle = tokenize(phrase);
  if (needle.empty()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace audiopedia
