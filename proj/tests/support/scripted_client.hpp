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
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "clients/chat.hpp"

namespace guwen::testing {

// Plays back a fixed sequence of replies or failures, then repeats the last.
class ScriptedChatClient : public clients::ChatClient {
 public:
  struct Fail {
    bool transient = true;
    std::optional<std::chrono::milliseconds> retry_after;
  };
  using Step = std::variant<std::string, Fail>;

  explicit ScriptedChatClient(std::vector<Step> steps) : steps_(std::move(steps)) {}

  std::string complete(const clients::ChatRequest&) override {
    std::size_t i;
    {
      std::lock_guard lock(mu_);
      i = std::min(next_++, steps_.size() - 1);
    }
    ++calls_;
    if (auto* reply = std::get_if<std::string>(&steps_[i])) return *reply;
    const auto& fail = std::get<Fail>(steps_[i]);
    if (fail.transient) throw clients::TransientError("scripted 429", fail.retry_after);
    throw clients::ClientError("scripted failure");
  }

  std::size_t calls() const { return calls_.load(); }

 private:
  std::vector<Step> steps_;
  std::mutex mu_;
  std::size_t next_ = 0;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace guwen::testing
