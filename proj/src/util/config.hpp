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

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "textnorm/normalize.hpp"

namespace guwen {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace config {

using Json = nlohmann::json;

Json load(const std::filesystem::path& path);
Json parse(std::string_view text);

// Missing keys fall back to `fallback`; a key of the wrong type is an error.
std::string get_string(const Json& obj, const char* key, std::string fallback = {});
long long get_int(const Json& obj, const char* key, long long fallback);
double get_double(const Json& obj, const char* key, double fallback);
bool get_bool(const Json& obj, const char* key, bool fallback);
std::vector<std::string> get_strings(const Json& obj, const char* key);

// Relative paths resolve against `base`; empty stays empty.
std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value);

// {"width_folding": bool, "script_mapping": "preserve"|..., "strip_controls": bool}
textnorm::NormPolicy policy_from_json(const Json& obj);
Json policy_to_json(const textnorm::NormPolicy& policy);

}  // namespace config
}  // namespace guwen
