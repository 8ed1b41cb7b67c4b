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

#include <cmath>
#include <limits>
#include <map>

#include <gtest/gtest.h>

#include "audiopedia/random.hpp"
#include "test_support.hpp"

namespace audiopedia {
namespace {

using Strings = std::vector<std::string>;

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("Subway serves salad and sandwich."), (Strings{"subway", "serves", "salad", "and", "sandwich"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("KFC-1965"), (Strings{"kfc", "1965"}));
  EXPECT_EQ(tokenize("Arby's"), (Strings{"arby", "s"}));
  EXPECT_TRUE(tokenize(" ,.;-- ").empty());
}

TEST(Tokenize, NonAsciiBytesStayInsideTokens) {
  EXPECT_EQ(tokenize("Caf\xc3\xa9 Nero"), (Strings{"caf\xc3\xa9", "nero"}));
}

TEST(Vectorizer, SingleDocumentIdfIsOne) {
  const Strings corpus{"Subway serves salad and sandwich."};
  const auto v = Vectorizer::fit(corpus);
  ASSERT_EQ(v.dimension(), 5u);
  for (double idf : v.idf()) EXPECT_DOUBLE_EQ(idf, std::log(2.0 / 2.0) + 1.0);
}

TEST(Vectorizer, IdfFormulaAgainstHandCount) {
  const Strings corpus{"subway serves salad", "kfc serves chicken", "subway subway", "arby"};
  const auto v = Vectorizer::fit(corpus);
  const double D = 4;
  std::map<std::string, int> df{{"subway", 2}, {"serves", 2}, {"salad", 1}, {"kfc", 1}, {"chicken", 1}, {"arby", 1}};
  ASSERT_EQ(v.dimension(), df.size());
  for (const auto& [tok, n] : df) {
    const auto i = v.index_of(tok);
    ASSERT_GE(i, 0) << tok;
    EXPECT_DOUBLE_EQ(v.idf()[static_cast<std::size_t>(i)], std::log((1 + D) / (1 + n)) + 1) << tok;
  }
  EXPECT_EQ(v.index_of("missing"), -1);
}

TEST(Vectorizer, TokenInEveryDocumentHasIdfOne) {
  const Strings corpus{"a b", "a c", "a d", "a"};
  const auto v = Vectorizer::fit(corpus);
  EXPECT_DOUBLE_EQ(v.idf()[static_cast<std::size_t>(v.index_of("a"))], 1.0);
}

TEST(Vectorizer, EmptyCorpusRejected) {
  EXPECT_EQ(testing::code_of([] { Vectorizer::fit({}); }), ErrorCode::kEmptyCorpus);
}

TEST(Vectorizer, TermFrequencyWeight) {
  const Strings corpus{"subway subway serves", "kfc serves"};
  const auto v = Vectorizer::fit(corpus);
  const auto vec = v.encode("subway subway serves");
  const auto i = static_cast<std::uint32_t>(v.index_of("subway"));
  EXPECT_DOUBLE_EQ(vec.weight(i), 2 * v.idf()[i]);
}

TEST(Vectorizer, OutOfVocabularyIsZeroAndDocsNonZero) {
  const Strings corpus{"subway serves salad", "kfc"};
  const auto v = Vectorizer::fit(corpus);
  EXPECT_TRUE(v.encode("pizza hut!").is_zero());
  EXPECT_TRUE(v.encode("").is_zero());
  for (const auto& doc : corpus) EXPECT_FALSE(v.encode(doc).is_zero());
  EXPECT_EQ(v.encode_batch(corpus).size(), 2u);
}

TEST(Cosine, Examples) {
  const auto u = SparseVector::from_dense(std::vector<double>{1, 1, 0});
  const auto v = SparseVector::from_dense(std::vector<double>{1, 0, 0});
  EXPECT_NEAR(cosine(u, v), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(cosine(u, u), 1.0, 1e-12);
  const auto w = SparseVector::from_dense(std::vector<double>{0, 0, 3});
  EXPECT_EQ(cosine(v, w), 0.0);
  EXPECT_EQ(cosine(u, SparseVector{}), 0.0);
  EXPECT_EQ(cosine(SparseVector{}, SparseVector{}), 0.0);
}

TEST(Cosine, MatchesDenseOracleAndIsScaleInvariant) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.below(3) == 0 ? 0.0 : rng.unit() * 4 - 2;
      b[i] = rng.below(3) == 0 ? 0.0 : rng.unit() * 4 - 2;
    }
    double d = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    const double expected = (na == 0 || nb == 0) ? 0.0 : d / (std::sqrt(na) * std::sqrt(nb));
    const auto u = SparseVector::from_dense(a), v = SparseVector::from_dense(b);
    const double c = cosine(u, v);
    EXPECT_NEAR(c, expected, 1e-12);
    EXPECT_GE(c, -1.0);
    EXPECT_LE(c, 1.0);
    EXPECT_NEAR(cosine(u.scaled(7.0), v), c, 1e-12);
  }
}

TEST(SparseVector, MergesAndRejectsNonFinite) {
  const SparseVector v({{3, 1.0}, {1, 2.0}, {3, 0.5}});
  ASSERT_EQ(v.entries().size(), 2u);
  EXPECT_EQ(v.entries()[0].first, 1u);
  EXPECT_DOUBLE_EQ(v.weight(3), 1.5);
  EXPECT_DOUBLE_EQ(v.weight(2), 0.0);
  EXPECT_DOUBLE_EQ(dot(v, v), 1.5 * 1.5 + 4.0);
  EXPECT_EQ(testing::code_of([] { SparseVector({{0, std::numeric_limits<double>::infinity()}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(TfidfProvider, FitsOnGivenCorpus) {
  const Strings corpus{"subway serves salad", "kfc serves chicken"};
  const auto enc = tfidf_provider()(corpus);
  const auto vecs = enc->encode_batch(corpus);
  ASSERT_EQ(vecs.size(), 2u);
  EXPECT_GT(cosine(enc->encode_one("subway salad"), vecs[0]), cosine(enc->encode_one("subway salad"), vecs[1]));
}

}  // namespace
}  // namespace audiopedia
