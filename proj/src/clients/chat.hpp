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
#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "util/config.hpp"

namespace guwen::clients {

class ClientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rate limits, 5xx and network failures: worth another attempt.
class TransientError : public ClientError {
 public:
  explicit TransientError(const std::string& what, std::optional<std::chrono::milliseconds> retry_after = {})
      : ClientError(what), retry_after(retry_after) {}
  std::optional<std::chrono::milliseconds> retry_after;
};

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 1024;
};

ChatRequest user_request(std::string model, std::string prompt, double temperature = 0.0, int max_tokens = 1024);

config::Json request_to_json(const ChatRequest& request);
// Accepts {"content": ...} or the choices[0].message.content shape.
std::string content_from_response(std::string_view body);

// Implementations must be safe to call from several threads.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds backoff{500};
  double multiplier = 2.0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Retries TransientError up to max_attempts total, sleeping the larger of the
// backoff and any Retry-After. The last error propagates.
std::string complete_with_retry(ChatClient& client, const ChatRequest& request, const RetryPolicy& policy,
                                const Sleeper& sleep);
Sleeper real_sleeper();

struct ChatOutcome {
  std::optional<std::string> content;
  std::string error;
  int attempts = 0;
};

// Fans the requests out over at most `parallelism` workers. Results are in
// request order whatever the completion order.
std::vector<ChatOutcome> complete_all(ChatClient& client, const std::vector<ChatRequest>& requests,
                                      std::size_t parallelism, const RetryPolicy& policy, const Sleeper& sleep);

struct MockRule {
  std::string contains;
  std::string response;
};

enum class MockFallback { kEcho, kEmpty, kFixed, kFail };

// Replies to the last user message: the first rule whose `contains` occurs
// in it wins, otherwise the fallback. Deterministic.
class MockChatClient : public ChatClient {
 public:
  explicit MockChatClient(std::vector<MockRule> rules = {}, MockFallback fallback = MockFallback::kEcho,
                          std::string fixed = {});
  MockChatClient(MockChatClient&& other) noexcept
      : rules_(std::move(other.rules_)),
        fallback_(other.fallback_),
        fixed_(std::move(other.fixed_)),
        calls_(other.calls_.load()) {}

  // {"rules": [{"contains", "response"}], "fallback": "echo"|"empty"|"fixed"|"fail", "fixed": "..."}
  static MockChatClient from_json(const config::Json& obj);

  std::string complete(const ChatRequest& request) override;
  std::size_t calls() const { return calls_.load(); }

 private:
  std::vector<MockRule> rules_;
  MockFallback fallback_;
  std::string fixed_;
  std::atomic<std::size_t> calls_{0};
};

struct HttpClientConfig {
  std::string endpoint;     // full URL of the chat route
  std::string api_key_env;  // environment variable holding a bearer token
  std::chrono::seconds timeout{120};
};

class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(HttpClientConfig config);
  std::string complete(const ChatRequest& request) override;

 private:
  HttpClientConfig config_;
};

// POSTs `body` as JSON; 429, 5xx and connection failures throw TransientError.
std::string http_post_json(const HttpClientConfig& config, const std::string& body);

}  // namespace guwen::clients
