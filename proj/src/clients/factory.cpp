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


#include "clients/factory.hpp"

namespace guwen::clients {
namespace {

HttpClientConfig http_config(const config::Json& obj) {
  HttpClientConfig cfg;
  cfg.endpoint = config::get_string(obj, "endpoint");
  if (cfg.endpoint.empty()) throw ConfigError("http client needs \"endpoint\"");
  cfg.api_key_env = config::get_string(obj, "api_key_env");
  const auto timeout = config::get_int(obj, "timeout_s", 120);
  if (timeout < 1) throw ConfigError("timeout_s must be positive");
  cfg.timeout = std::chrono::seconds(timeout);
  return cfg;
}

}  // namespace

ModelSettings model_settings_from_json(const config::Json& obj) {
  ModelSettings s;
  s.model = config::get_string(obj, "model", "mock");
  s.temperature = config::get_double(obj, "temperature", s.temperature);
  s.max_tokens = static_cast<int>(config::get_int(obj, "max_tokens", s.max_tokens));
  const auto parallelism = config::get_int(obj, "parallelism", 1);
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
  s.parallelism = static_cast<std::size_t>(parallelism);
  if (obj.contains("retry")) {
    const auto& r = obj["retry"];
    s.retry.max_attempts = static_cast<int>(config::get_int(r, "max_attempts", s.retry.max_attempts));
    s.retry.backoff = std::chrono::milliseconds(config::get_int(r, "backoff_ms", s.retry.backoff.count()));
    s.retry.multiplier = config::get_double(r, "multiplier", s.retry.multiplier);
  }
  if (s.retry.max_attempts < 1) throw ConfigError("retry.max_attempts must be at least 1");
  return s;
}

config::Json model_settings_to_json(const ModelSettings& s) {
  return {{"model", s.model},
          {"temperature", s.temperature},
          {"max_tokens", s.max_tokens},
          {"parallelism", s.parallelism},
          {"retry",
           {{"max_attempts", s.retry.max_attempts},
            {"backoff_ms", s.retry.backoff.count()},
            {"multiplier", s.retry.multiplier}}}};
}

std::unique_ptr<ChatClient> make_chat_client(const config::Json& obj, const std::filesystem::path& base) {
  const auto type = config::get_string(obj, "type", "mock");
  if (type == "http") return std::make_unique<HttpChatClient>(http_config(obj));
  if (type != "mock") throw ConfigError("unknown client type: " + type);
  const auto file = config::resolve(base, config::get_string(obj, "rules_file"));
  if (!file.empty()) return std::make_unique<MockChatClient>(MockChatClient::from_json(config::load(file)));
  return std::make_unique<MockChatClient>(MockChatClient::from_json(obj));
}

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpClientConfig config, std::string model)
    : config_(std::move(config)), model_(std::move(model)) {}

std::vector<metrics::TokenVectors> HttpEmbeddingProvider::embed(std::span<const std::string> texts) {
  const config::Json request{{"model", model_}, {"texts", std::vector<std::string>(texts.begin(), texts.end())}};
  std::string body;
  try {
    body = http_post_json(config_, request.dump());
  } catch (const ClientError& e) {
    throw metrics::ProviderError(e.what());
  }
  auto json = config::Json::parse(body, nullptr, false);
  if (json.is_discarded() || !json.contains("vectors") || !json["vectors"].is_array() ||
      json["vectors"].size() != texts.size()) {
    throw metrics::ProviderError("embedding response lacks one \"vectors\" entry per text");
  }
  std::vector<metrics::TokenVectors> out;
  try {
    for (const auto& per_text : json["vectors"]) out.push_back(per_text.get<metrics::TokenVectors>());
  } catch (const config::Json::exception& e) {
    throw metrics::ProviderError(std::string("malformed embedding vectors: ") + e.what());
  }
  return out;
}

std::unique_ptr<metrics::EmbeddingProvider> make_embedding_provider(const config::Json& obj,
                                                                    const std::filesystem::path& base) {
  const auto type = config::get_string(obj, "type", "mock");
  if (type == "http") {
    return std::make_unique<HttpEmbeddingProvider>(http_config(obj), config::get_string(obj, "model"));
  }
  if (type != "mock") throw ConfigError("unknown embedding provider type: " + type);
  const bool strict = config::get_bool(obj, "strict", false);
  const auto table = config::resolve(base, config::get_string(obj, "table"));
  if (!table.empty()) {
    return std::make_unique<metrics::MockEmbeddingProvider>(metrics::MockEmbeddingProvider::load(table, strict));
  }
  const auto dim = config::get_int(obj, "dim", 16);
  if (dim < 1) throw ConfigError("embedding dim must be positive");
  return std::make_unique<metrics::MockEmbeddingProvider>(static_cast<std::size_t>(dim), strict);
}

}  // namespace guwen::clients
