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

// Random input generators shared by the property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "util/utf8.hpp"

namespace guwen::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool coin(double p = 0.5) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  // Ideographs from a small pool so that n-grams and duplicates recur.
  std::string ideographs(std::size_t n, std::size_t pool = 12) {
    static const std::u32string kPool = U"天下福也四年春衞州吁弑桓公而立人之初性本善国学说杀为卫";
    std::string out;
    for (std::size_t i = 0; i < n; ++i) utf8::append(out, kPool[below(std::min(pool, kPool.size()))]);
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace guwen::testing
