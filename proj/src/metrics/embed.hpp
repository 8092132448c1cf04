// Copyright 2026 The Guwen Authors
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

#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace guwen::metrics {

using Vector = std::vector<double>;
using TokenVectors = std::vector<Vector>;

// Network, auth or shape failures from an embedding backend. Items that hit
// one are reported unscored, never as zero.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returns one list of per-token vectors for each input text. Tokenization is
// the provider's business.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<TokenVectors> embed(std::span<const std::string> texts) = 0;
};

// Deterministic provider backed by a table of `token<TAB>v1 v2 ...` lines.
// Texts are split with the BLEU tokenizer. Tokens missing from the table get a
// vector derived from a hash of the token, unless strict is set, in which
// case they raise ProviderError.
class MockEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit MockEmbeddingProvider(std::size_t dim = 16, bool strict = false);
  MockEmbeddingProvider(std::unordered_map<std::string, Vector> table, bool strict);
  MockEmbeddingProvider(MockEmbeddingProvider&& other) noexcept
      : table_(std::move(other.table_)), dim_(other.dim_), strict_(other.strict_), calls_(other.calls_.load()) {}

  static MockEmbeddingProvider load(const std::filesystem::path& path, bool strict = false);
  static MockEmbeddingProvider parse(std::string_view text, bool strict = false);

  std::vector<TokenVectors> embed(std::span<const std::string> texts) override;

  std::size_t dim() const { return dim_; }
  std::size_t calls() const { return calls_.load(); }

 private:
  Vector hashed(std::string_view token) const;

  std::unordered_map<std::string, Vector> table_;
  std::size_t dim_;
  bool strict_;
  std::atomic<std::size_t> calls_{0};
};

struct EmbedScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Greedy matching: precision averages, over candidate tokens, the best cosine
// against any reference token; recall is the mirror image. No IDF weighting
// and no baseline rescaling. Zero vectors have cosine 0 with everything.
EmbedScore embed_score_vectors(const TokenVectors& candidate, const TokenVectors& reference);

EmbedScore embed_score(std::string_view candidate, std::string_view reference, EmbeddingProvider& provider);

double cosine(const Vector& a, const Vector& b);

}  // namespace guwen::metrics
