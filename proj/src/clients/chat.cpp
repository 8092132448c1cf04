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


#include "clients/chat.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "util/parallel.hpp"

namespace guwen::clients {

ChatRequest user_request(std::string model, std::string prompt, double temperature, int max_tokens) {
  return ChatRequest{std::move(model), {{"user", std::move(prompt)}}, temperature, max_tokens};
}

config::Json request_to_json(const ChatRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", request.model},
          {"messages", messages},
          {"temperature", request.temperature},
          {"max_tokens", request.max_tokens}};
}

std::string content_from_response(std::string_view body) {
  auto json = nlohmann::json::parse(body, nullptr, false);
  if (json.is_discarded() || !json.is_object()) throw ClientError("response is not a JSON object");
  if (auto it = json.find("content"); it != json.end() && it->is_string()) return it->get<std::string>();
  if (auto it = json.find("choices"); it != json.end() && it->is_array() && !it->empty()) {
    const auto& first = (*it)[0];
    if (first.contains("message") && first["message"].contains("content") && first["message"]["content"].is_string()) {
      return first["message"]["content"].get<std::string>();
    }
  }
  throw ClientError("response has no content");
}

std::string complete_with_retry(ChatClient& client, const ChatRequest& request, const RetryPolicy& policy,
                                const Sleeper& sleep) {
  const int attempts = std::max(1, policy.max_attempts);
  double delay = static_cast<double>(policy.backoff.count());
  for (int attempt = 1;; ++attempt) {
    try {
      return client.complete(request);
    } catch (const TransientError& e) {
      if (attempt >= attempts) throw;
      auto wait = std::chrono::milliseconds(static_cast<long long>(std::llround(delay)));
      if (e.retry_after) wait = std::max(wait, *e.retry_after);
      if (sleep) sleep(wait);
      delay *= policy.multiplier;
    }
  }
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::vector<ChatOutcome> complete_all(ChatClient& client, const std::vector<ChatRequest>& requests,
                                      std::size_t parallelism, const RetryPolicy& policy, const Sleeper& sleep) {
  std::vector<ChatOutcome> out(requests.size());
  parallel_for(requests.size(), parallelism, [&](std::size_t i) {
    int attempts = 0;
    auto counting = [&](std::chrono::milliseconds d) {
      ++attempts;
      if (sleep) sleep(d);
    };
    try {
      out[i].content = complete_with_retry(client, requests[i], policy, counting);
    } catch (const ClientError& e) {
      out[i].error = e.what();
    }
    out[i].attempts = attempts + 1;
  });
  return out;
}

MockChatClient::MockChatClient(std::vector<MockRule> rules, MockFallback fallback, std::string fixed)
    : rules_(std::move(rules)), fallback_(fallback), fixed_(std::move(fixed)) {}

MockChatClient MockChatClient::from_json(const config::Json& obj) {
  std::vector<MockRule> rules;
  if (obj.contains("rules")) {
    if (!obj["rules"].is_array()) throw ConfigError("mock \"rules\" must be an array");
    for (const auto& rule : obj["rules"]) {
      rules.push_back({config::get_string(rule, "contains"), config::get_string(rule, "response")});
    }
  }
  const auto name = config::get_string(obj, "fallback", "echo");
  MockFallback fallback;
  if (name == "echo") {
    fallback = MockFallback::kEcho;
  } else if (name == "empty") {
    fallback = MockFallback::kEmpty;
  } else if (name == "fixed") {
    fallback = MockFallback::kFixed;
  } else if (name == "fail") {
    fallback = MockFallback::kFail;
  } else {
    throw ConfigError("unknown mock fallback: " + name);
  }
  return MockChatClient(std::move(rules), fallback, config::get_string(obj, "fixed"));
}

std::string MockChatClient::complete(const ChatRequest& request) {
  ++calls_;
  std::string_view prompt;
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == "user") {
      prompt = it->content;
      break;
    }
  }
  for (const auto& rule : rules_) {
    if (prompt.find(rule.contains) != std::string_view::npos) return rule.response;
  }
  switch (fallback_) {
    case MockFallback::kEcho:
      return std::string(prompt);
    case MockFallback::kEmpty:
      return {};
    case MockFallback::kFixed:
      return fixed_;
    case MockFallback::kFail:
      break;
  }
  throw ClientError("mock client has no response for the prompt");
}

HttpChatClient::HttpChatClient(HttpClientConfig config) : config_(std::move(config)) {}

std::string HttpChatClient::complete(const ChatRequest& request) {
  return content_from_response(http_post_json(config_, request_to_json(request).dump()));
}

}  // namespace guwen::clients
