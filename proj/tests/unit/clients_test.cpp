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


#include <doctest.h>
#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include "clients/chat.hpp"
#include "support/scripted_client.hpp"

using namespace guwen;
using namespace guwen::clients;
using namespace std::chrono_literals;
using testing::ScriptedChatClient;

namespace {

struct SleepLog {
  std::vector<std::chrono::milliseconds> waits;
  Sleeper sleeper() {
    return [this](std::chrono::milliseconds d) { waits.push_back(d); };
  }
};

}  // namespace

TEST_CASE("request and response wire shapes") {
  auto req = user_request("qwen", "子曰", 0.2, 64);
  CHECK(request_to_json(req).dump() ==
        R"({"max_tokens":64,"messages":[{"content":"子曰","role":"user"}],"model":"qwen","temperature":0.2})");
  CHECK(content_from_response(R"({"content": "学而"})") == "学而");
  CHECK(content_from_response(R"({"choices": [{"message": {"role": "assistant", "content": "时习"}}]})") == "时习");
  CHECK_THROWS_AS(content_from_response("[]"), ClientError);
  CHECK_THROWS_AS(content_from_response(R"({"choices": []})"), ClientError);
}

TEST_CASE("retry honors attempts, backoff and Retry-After") {
  ScriptedChatClient flaky({ScriptedChatClient::Fail{true, {}}, ScriptedChatClient::Fail{true, 3000ms}, "好"});
  SleepLog log;
  RetryPolicy policy{3, 100ms, 2.0};
  CHECK(complete_with_retry(flaky, user_request("m", "x"), policy, log.sleeper()) == "好");
  CHECK(flaky.calls() == 3);
  REQUIRE(log.waits.size() == 2);
  CHECK(log.waits[0] == 100ms);
  CHECK(log.waits[1] == 3000ms);

  ScriptedChatClient down({ScriptedChatClient::Fail{true, {}}});
  SleepLog log2;
  CHECK_THROWS_AS(complete_with_retry(down, user_request("m", "x"), {2, 10ms, 3.0}, log2.sleeper()), TransientError);
  CHECK(down.calls() == 2);

  ScriptedChatClient fatal({ScriptedChatClient::Fail{false, {}}, "never"});
  CHECK_THROWS_AS(complete_with_retry(fatal, user_request("m", "x"), policy, log.sleeper()), ClientError);
  CHECK(fatal.calls() == 1);
}

TEST_CASE("complete_all keeps request order and records failures") {
  MockChatClient mock({{"甲", "一"}, {"乙", "二"}}, MockFallback::kFail);
  std::vector<ChatRequest> requests;
  for (const char* p : {"甲", "乙", "丙", "乙甲"}) requests.push_back(user_request("m", p));
  auto out = complete_all(mock, requests, 3, {2, 0ms, 1.0}, {});
  REQUIRE(out.size() == 4);
  CHECK(out[0].content == "一");
  CHECK(out[1].content == "二");
  CHECK_FALSE(out[2].content);
  CHECK(out[2].error == "mock client has no response for the prompt");
  CHECK(out[3].content == "一");
  CHECK(mock.calls() == 4);
}

TEST_CASE("mock client fallbacks and config") {
  auto req = user_request("m", "春眠不觉晓");
  CHECK(MockChatClient({}, MockFallback::kEcho).complete(req) == "春眠不觉晓");
  CHECK(MockChatClient({}, MockFallback::kEmpty).complete(req).empty());
  CHECK(MockChatClient({}, MockFallback::kFixed, "答").complete(req) == "答");
  auto parsed = MockChatClient::from_json(
      config::parse(R"({"rules": [{"contains": "春眠", "response": "处处闻啼鸟"}], "fallback": "empty"})"));
  CHECK(parsed.complete(req) == "处处闻啼鸟");
  CHECK(parsed.complete(user_request("m", "夜来")).empty());
  CHECK_THROWS_AS(MockChatClient::from_json(config::parse(R"({"fallback": "maybe"})")), ConfigError);
}

TEST_CASE("HTTP client against a local server") {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string seen_auth, seen_body;
  server.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
    if (++hits == 1) {
      res.status = 429;
      res.set_header("Retry-After", "0");
      return;
    }
    seen_auth = req.get_header_value("Authorization");
    seen_body = req.body;
    res.set_content(R"({"choices": [{"message": {"content": "天下大势"}}]})", "application/json");
  });
  server.Post("/v1/bad", [](const httplib::Request&, httplib::Response& res) { res.status = 400; });
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread serve([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("GUWEN_TEST_KEY", "secret", 1);
  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  HttpChatClient client({base + "/v1/chat", "GUWEN_TEST_KEY", 5s});
  SleepLog log;
  CHECK(complete_with_retry(client, user_request("m", "子曰"), {3, 1ms, 1.0}, log.sleeper()) == "天下大势");
  CHECK(hits == 2);
  CHECK(seen_auth == "Bearer secret");
  CHECK(seen_body.find("\"子曰\"") != std::string::npos);
  CHECK(log.waits.size() == 1);

  HttpChatClient bad({base + "/v1/bad", "", 5s});
  CHECK_THROWS_AS(bad.complete(user_request("m", "x")), ClientError);
  HttpChatClient nokey({base + "/v1/chat", "GUWEN_TEST_UNSET_KEY", 5s});
  CHECK_THROWS_WITH_AS(nokey.complete(user_request("m", "x")), doctest::Contains("not set"), ClientError);

  server.stop();
  serve.join();

  HttpChatClient gone({base + "/v1/chat", "", 1s});
  CHECK_THROWS_AS(gone.complete(user_request("m", "x")), TransientError);
}
