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

#include "audiopedia/text_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "audiopedia/error.hpp"

namespace audiopedia {

namespace {

bool is_token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_token_byte(c)) {
      current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& [dim, w] : entries) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kInvalidArgument, "non-finite vector weight");
    if (!entries_.empty() && entries_.back().first == dim) {
      entries_.back().second += w;
    } else {
      entries_.emplace_back(dim, w);
    }
  }
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) entries.emplace_back(static_cast<std::uint32_t>(i), values[i]);
  }
  return SparseVector(std::move(entries));
}

bool SparseVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second == 0.0; });
}

double SparseVector::norm() const { return std::sqrt(dot(*this, *this)); }

double SparseVector::weight(std::uint32_t dim) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), dim,
                                   [](const Entry& e, std::uint32_t d) { return e.first < d; });
  return (it != entries_.end() && it->first == dim) ? it->second : 0.0;
}

SparseVector SparseVector::scaled(double factor) const {
  SparseVector out = *this;
  for (auto& e : out.entries_) e.second *= factor;
  return out;
}

double dot(const SparseVector& u, const SparseVector& v) {
  const auto& a = u.entries();
  const auto& b = v.entries();
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      sum += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return sum;
}

double cosine(const SparseVector& u, const SparseVector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

SparseVector TextEncoder::encode_one(const std::string& text) const {
  auto out = encode_batch(std::span<const std::string>(&text, 1));
  return std::move(out.front());
}

Vectorizer Vectorizer::fit(std::span<const std::string> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "cannot fit on an empty corpus");
  Vectorizer v;
  std::vector<std::size_t> df;
  for (const auto& doc : corpus) {
    std::vector<std::uint32_t> seen;
    for (auto& token : tokenize(doc)) {
      auto [it, inserted] = v.index_.try_emplace(token, static_cast<std::uint32_t>(v.tokens_.size()));
      if (inserted) {
        v.tokens_.push_back(token);
        df.push_back(0);
      }
      seen.push_back(it->second);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto dim : seen) ++df[dim];
  }
  const double docs = static_cast<double>(corpus.size());
  v.idf_.reserve(df.size());
  for (auto count : df) {
    v.idf_.push_back(std::log((1.0 + docs) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return v;
}

std::int64_t Vectorizer::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

SparseVector Vectorizer::encode(std::string_view text) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : tokenize(text)) {
    const auto it = index_.find(token);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  std::vector<SparseVector::Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [dim, tf] : counts) entries.emplace_back(dim, tf * idf_[dim]);
  return SparseVector(std::move(entries));
}

std::vector<SparseVector> Vectorizer::encode_batch(std::span<const std::string> texts) const {
  std::vector<SparseVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(encode(t));
  return out;
}

EncoderProvider tfidf_provider() {
  return [](std::span<const std::string> corpus) -> std::shared_ptr<const TextEncoder> {
    return std::make_shared<const Vectorizer>(Vectorizer::fit(corpus));
  };
}

}  // namespace audiopedia
