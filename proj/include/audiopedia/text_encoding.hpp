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

#ifndef AUDIOPEDIA_TEXT_ENCODING_HPP_
#define AUDIOPEDIA_TEXT_ENCODING_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace audiopedia {

// Lowercased maximal runs of ASCII letters/digits. Bytes >= 0x80 count as
// letters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

// Sparse vector with strictly increasing dimensions.
class SparseVector {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  SparseVector() = default;
  // Sorts by dimension and merges duplicates by summing. Throws
  // kInvalidArgument on a non-finite weight.
  explicit SparseVector(std::vector<Entry> entries);
  static SparseVector from_dense(std::span<const double> values);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const;
  double norm() const;
  double weight(std::uint32_t dim) const;
  SparseVector scaled(double factor) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

double dot(const SparseVector& u, const SparseVector& v);

// dot / (|u| |v|), or 0 when either norm is 0.
double cosine(const SparseVector& u, const SparseVector& v);

// Anything that turns texts into vectors comparable by cosine.
class TextEncoder {
 public:
  virtual ~TextEncoder() = default;
  virtual std::vector<SparseVector> encode_batch(std::span<const std::string> texts) const = 0;
  SparseVector encode_one(const std::string& text) const;
};

// Builds an encoder for a corpus. TF-IDF fits on it; remote encoders ignore it.
using EncoderProvider =
    std::function<std::shared_ptr<const TextEncoder>(std::span<const std::string> corpus)>;

// Token TF-IDF with idf(t) = ln((1 + D) / (1 + df(t))) + 1.
class Vectorizer final : public TextEncoder {
 public:
  // Throws kEmptyCorpus.
  static Vectorizer fit(std::span<const std::string> corpus);

  std::size_t dimension() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<double>& idf() const { return idf_; }
  // -1 when the token is out of vocabulary.
  std::int64_t index_of(std::string_view token) const;

  SparseVector encode(std::string_view text) const;
  std::vector<SparseVector> encode_batch(std::span<const std::string> texts) const override;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<double> idf_;
};

EncoderProvider tfidf_provider();

}  // namespace audiopedia

#endif  // AUDIOPEDIA_TEXT_ENCODING_HPP_
