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


#include "util/config.hpp"

#include "util/io.hpp"

namespace guwen::config {
namespace {

const Json* find(const Json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

[[noreturn]] void wrong_type(const char* key, const char* want) {
  throw ConfigError(std::string("config key \"") + key + "\" must be " + want);
}

}  // namespace

Json parse(std::string_view text) {
  Json out = Json::parse(text, nullptr, false);
  if (out.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!out.is_object()) throw ConfigError("config must be a JSON object");
  return out;
}

Json load(const std::filesystem::path& path) {
  try {
    return parse(io::read_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string get_string(const Json& obj, const char* key, std::string fallback) {
  const Json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) wrong_type(key, "a string");
  return v->get<std::string>();
}

long long get_int(const Json& obj, const char* key, long long fallback) {
  const Json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) wrong_type(key, "an integer");
  return v->get<long long>();
}

double get_double(const Json& obj, const char* key, double fallback) {
  const Json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) wrong_type(key, "a number");
  return v->get<double>();
}

bool get_bool(const Json& obj, const char* key, bool fallback) {
  const Json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) wrong_type(key, "a boolean");
  return v->get<bool>();
}

std::vector<std::string> get_strings(const Json& obj, const char* key) {
  const Json* v = find(obj, key);
  if (!v) return {};
  if (!v->is_array()) wrong_type(key, "an array of strings");
  std::vector<std::string> out;
  for (const auto& item : *v) {
    if (!item.is_string()) wrong_type(key, "an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  if (value.empty()) return {};
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

textnorm::NormPolicy policy_from_json(const Json& obj) {
  textnorm::NormPolicy policy;
  policy.width_folding = get_bool(obj, "width_folding", policy.width_folding);
  policy.strip_controls = get_bool(obj, "strip_controls", policy.strip_controls);
  const auto mapping = get_string(obj, "script_mapping", "preserve");
  auto parsed = textnorm::script_mapping_from_string(mapping);
  if (!parsed) throw ConfigError("unknown script_mapping: " + mapping);
  policy.script_mapping = *parsed;
  return policy;
}

Json policy_to_json(const textnorm::NormPolicy& policy) {
  return Json{{"unicode_form", "composed-canonical"},
              {"width_folding", policy.width_folding},
              {"script_mapping", std::string(textnorm::to_string(policy.script_mapping))},
              {"strip_controls", policy.strip_controls}};
}

}  // namespace guwen::config
