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


#include <httplib.h>

#include <cstdlib>

#include "clients/chat.hpp"

namespace guwen::clients {

std::string http_post_json(const HttpClientConfig& config, const std::string& body) {
  const auto& url = config.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ClientError("endpoint needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  const auto origin = url.substr(0, path_start);
  const auto path = path_start == std::string::npos ? std::string("/") : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(config.timeout);
  client.set_read_timeout(config.timeout);
  client.set_write_timeout(config.timeout);
  httplib::Headers headers;
  if (!config.api_key_env.empty()) {
    const char* key = std::getenv(config.api_key_env.c_str());
    if (!key || !*key) throw ClientError("environment variable " + config.api_key_env + " is not set");
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto res = client.Post(path, headers, body, "application/json");
  if (!res) throw TransientError("request to " + origin + " failed: " + httplib::to_string(res.error()));
  if (res->status == 429 || res->status >= 500) {
    std::optional<std::chrono::milliseconds> retry_after;
    if (res->has_header("Retry-After")) {
      char* end = nullptr;
      const auto value = res->get_header_value("Retry-After");
      const long seconds = std::strtol(value.c_str(), &end, 10);
      if (end != value.c_str() && seconds >= 0) retry_after = std::chrono::seconds(seconds);
    }
    throw TransientError("HTTP " + std::to_string(res->status) + " from " + url, retry_after);
  }
  if (res->status < 200 || res->status >= 300) {
    throw ClientError("HTTP " + std::to_string(res->status) + " from " + url);
  }
  return res->body;
}

}  // namespace guwen::clients
