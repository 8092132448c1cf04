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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "formats/task.hpp"

namespace guwen::datagen {

class DatagenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::string>& builtin_template_texts();

// Named prompt templates with {placeholder} slots. Names: seed_<task>,
// expand_ner, reverse_ner, expand_generic, reverse_generic, answer.
class TemplateSet {
 public:
  static TemplateSet builtin();
  // Built-ins overridden by any <name>.txt in `dir`.
  static TemplateSet load_dir(const std::filesystem::path& dir);

  const std::string& get(const std::string& name) const;
  bool has(const std::string& name) const { return texts_.count(name) != 0; }
  void set(const std::string& name, std::string text) { texts_[name] = std::move(text); }

  const std::string& seed(formats::Task task) const;
  // The task-specific template if present, else the generic one.
  const std::string& expand(formats::Task task) const;
  const std::string& reverse(formats::Task task) const;

 private:
  std::map<std::string, std::string> texts_;
};

// Replaces {name} for every name in `values`. Other braces, including
// unknown placeholders, are left as they are.
std::string render(std::string_view tpl, const std::map<std::string, std::string>& values);

std::string task_description(formats::Task task);

}  // namespace guwen::datagen
