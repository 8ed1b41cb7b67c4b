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

#ifndef AUDIOPEDIA_QUESTION_MATCH_HPP_
#define AUDIOPEDIA_QUESTION_MATCH_HPP_

#include <compare>
#include <string_view>

namespace audiopedia {

// Two tokens match when equal, or when the shorter one has at least four
// characters and is a prefix of the other ("serve" ~ "serves",
// "japan" ~ "japanese").
bool tokens_match(std::string_view a, std::string_view b);

// How strongly a question points at a (relation, object) fact: number of
// relation tokens matched by some question token, then the same count for
// object tokens. Compared lexicographically.
struct MatchScore {
  int relation = 0;
  int object = 0;

  friend auto operator<=>(const MatchScore&, const MatchScore&) = default;
};

MatchScore match_score(std::string_view question, std::string_view relation, std::string_view object);

// True when the tokens of `phrase` occur contiguously in `text`'s tokens.
bool contains_token_sequence(std::string_view text, std::string_view phrase);

}  // namespace audiopedia

#endif  // AUDIOPEDIA_QUESTION_MATCH_HPP_
