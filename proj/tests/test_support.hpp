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

#ifndef AUDIOPEDIA_TESTS_TEST_SUPPORT_HPP_
#define AUDIOPEDIA_TESTS_TEST_SUPPORT_HPP_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "audiopedia/error.hpp"
#include "audiopedia/kb.hpp"

namespace audiopedia::testing {

// Code of the audiopedia::Error thrown by fn; records a failure when none is.
template <typename F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no audiopedia::Error thrown";
  return ErrorCode::kInvalidArgument;
}

inline std::filesystem::path source_dir() { return AUDIOPEDIA_SOURCE_DIR; }
inline std::filesystem::path data_path(const std::string& name) { return source_dir() / "data" / name; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("audiopedia-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline KnowledgeBase kb_from(const std::vector<Triplet>& triplets) {
  std::vector<TripletRow> rows;
  std::size_t line = 1;
  for (const auto& t : triplets) rows.push_back({t.subject, t.relation, t.object, line++});
  return ingest_triplets(rows);
}

// The running example: a handful of fast-food chains.
inline KnowledgeBase toy_kb() {
  return kb_from({{"Subway", "established in", "1965"},
                  {"Subway", "serves", "salad and sandwich"},
                  {"Arby's", "established in", "1964"},
                  {"Arby's", "serves", "roast beef sandwich"},
                  {"KFC", "established in", "1952"},
                  {"KFC", "serves", "fried chicken"}});
}

inline KnowledgeBase business_kb() { return load_knowledge_base(data_path("business_kb.tsv")); }
inline KnowledgeBase discriminative_kb() { return load_knowledge_base(data_path("discriminative_kb.tsv")); }

}  // namespace audiopedia::testing

#endif  // AUDIOPEDIA_TESTS_TEST_SUPPORT_HPP_
