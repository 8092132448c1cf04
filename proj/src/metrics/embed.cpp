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

#include "metrics/embed.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include "metrics/bleu.hpp"
#include "util/io.hpp"

namespace guwen::metrics {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

MockEmbeddingProvider::MockEmbeddingProvider(std::size_t dim, bool strict) : dim_(dim), strict_(strict) {
  if (dim_ == 0) throw std::invalid_argument("embedding dimension must be positive");
}

MockEmbeddingProvider::MockEmbeddingProvider(std::unordered_map<std::string, Vector> table, bool strict)
    : table_(std::move(table)), dim_(0), strict_(strict) {
  for (const auto& [token, v] : table_) {
    if (dim_ == 0) dim_ = v.size();
    if (v.size() != dim_ || dim_ == 0) throw ProviderError("inconsistent vector size for token '" + token + "'");
  }
  if (dim_ == 0) dim_ = 16;
}

MockEmbeddingProvider MockEmbeddingProvider::parse(std::string_view text, bool strict) {
  std::unordered_map<std::string, Vector> table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ProviderError("embedding table line " + std::to_string(line_no) + ": expected token<TAB>values");
    }
    std::istringstream values(line.substr(tab + 1));
    Vector v;
    double x = 0;
    while (values >> x) v.push_back(x);
    if (!values.eof()) throw ProviderError("embedding table line " + std::to_string(line_no) + ": bad number");
    table[line.substr(0, tab)] = std::move(v);
  }
  return MockEmbeddingProvider(std::move(table), strict);
}

MockEmbeddingProvider MockEmbeddingProvider::load(const std::filesystem::path& path, bool strict) {
  return parse(io::read_file(path), strict);
}

Vector MockEmbeddingProvider::hashed(std::string_view token) const {
  std::uint64_t state = 1469598103934665603ULL;
  for (unsigned char c : token) {
    state ^= c;
    state *= 1099511628211ULL;
  }
  Vector v(dim_);
  for (auto& x : v) x = static_cast<double>(splitmix64(state) >> 11) / 9007199254740992.0 * 2.0 - 1.0;
  return v;
}

std::vector<TokenVectors> MockEmbeddingProvider::embed(std::span<const std::string> texts) {
  ++calls_;
  std::vector<TokenVectors> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    TokenVectors vectors;
    for (const auto& token : bleu_tokenize(text)) {
      auto it = table_.find(token);
      if (it != table_.end()) {
        vectors.push_back(it->second);
      } else if (strict_) {
        throw ProviderError("token '" + token + "' not in embedding table");
      } else {
        vectors.push_back(hashed(token));
      }
    }
    out.push_back(std::move(vectors));
  }
  return out;
}

double cosine(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ProviderError("embedding dimensions differ");
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  // sqrt(x*x) == x exactly in IEEE arithmetic, so cosine(v, v) is exactly 1.
  return dot / std::sqrt(na * nb);
}

EmbedScore embed_score_vectors(const TokenVectors& candidate, const TokenVectors& reference) {
  if (candidate.empty() || reference.empty()) throw ProviderError("empty token vector list");
  std::vector<double> best_for_cand(candidate.size(), -2.0);
  std::vector<double> best_for_ref(reference.size(), -2.0);
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      const double c = cosine(candidate[i], reference[j]);
      best_for_cand[i] = std::max(best_for_cand[i], c);
      best_for_ref[j] = std::max(best_for_ref[j], c);
    }
  }
  EmbedScore out;
  for (double c : best_for_cand) out.precision += c;
  for (double c : best_for_ref) out.recall += c;
  out.precision /= static_cast<double>(candidate.size());
  out.recall /= static_cast<double>(reference.size());
  if (out.precision + out.recall > 0) {
    out.f1 = 2 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

EmbedScore embed_score(std::string_view candidate, std::string_view reference, EmbeddingProvider& provider) {
  const std::vector<std::string> texts{std::string(candidate), std::string(reference)};
  auto vectors = provider.embed(texts);
  if (vectors.size() != 2) throw ProviderError("provider returned " + std::to_string(vectors.size()) + " results for 2 texts");
  return embed_score_vectors(vectors[0], vectors[1]);
}

}  // namespace guwen::metrics
