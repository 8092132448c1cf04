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

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

#include "clients/chat.hpp"
#include "metrics/embed.hpp"
#include "util/config.hpp"

namespace guwen::clients {

// Per-run knobs shared by every request to one model.
struct ModelSettings {
  std::string model;
  double temperature = 0.0;
  int max_tokens = 1024;
  std::size_t parallelism = 1;
  RetryPolicy retry;
};

// Keys: model, temperature, max_tokens, parallelism,
// retry {max_attempts, backoff_ms, multiplier}.
ModelSettings model_settings_from_json(const config::Json& obj);
config::Json model_settings_to_json(const ModelSettings& settings);

// {"type": "mock", ...MockChatClient keys} or
// {"type": "http", "endpoint", "api_key_env", "timeout_s"}.
std::unique_ptr<ChatClient> make_chat_client(const config::Json& obj, const std::filesystem::path& base);

class HttpEmbeddingProvider : public metrics::EmbeddingProvider {
 public:
  HttpEmbeddingProvider(HttpClientConfig config, std::string model);
  // POST {model, texts} expecting {vectors: [[[...token vector...], ...], ...]}.
  std::vector<metrics::TokenVectors> embed(std::span<const std::string> texts) override;

 private:
  HttpClientConfig config_;
  std::string model_;
};

// {"type": "mock", "dim", "table", "strict"} or
// {"type": "http", "endpoint", "api_key_env", "model", "timeout_s"}.
std::unique_ptr<metrics::EmbeddingProvider> make_embedding_provider(const config::Json& obj,
                                                                    const std::filesystem::path& base);

}  // namespace guwen::clients
