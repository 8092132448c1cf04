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


#include "datagen/templates.hpp"

#include "util/io.hpp"

namespace guwen::datagen {

TemplateSet TemplateSet::builtin() {
  TemplateSet set;
  set.texts_ = builtin_template_texts();
  return set;
}

TemplateSet TemplateSet::load_dir(const std::filesystem::path& dir) {
  auto set = builtin();
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("template directory not found: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      auto text = io::read_file(entry.path());
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      set.texts_[entry.path().stem().string()] = std::move(text);
    }
  }
  return set;
}

const std::string& TemplateSet::get(const std::string& name) const {
  auto it = texts_.find(name);
  if (it == texts_.end()) throw DatagenError("no template named " + name);
  return it->second;
}

const std::string& TemplateSet::seed(formats::Task task) const {
  return get("seed_" + std::string(formats::to_string(task)));
}

const std::string& TemplateSet::expand(formats::Task task) const {
  const auto specific = "expand_" + std::string(formats::to_string(task));
  return has(specific) ? get(specific) : get("expand_generic");
}

const std::string& TemplateSet::reverse(formats::Task task) const {
  const auto specific = "reverse_" + std::string(formats::to_string(task));
  return has(specific) ? get(specific) : get("reverse_generic");
}

std::string render(std::string_view tpl, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      const auto close = tpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto it = values.find(std::string(tpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tpl[i++];
  }
  return out;
}

std::string task_description(formats::Task task) {
  switch (task) {
    case formats::Task::kPunctuation:
      return "Classical Chinese punctuation";
    case formats::Task::kPos:
      return "part-of-speech tagging";
    case formats::Task::kNer:
      return "Named Entity Recognition (NER)";
    case formats::Task::kTranslation:
      return "Classical Chinese to modern Chinese translation";
    case formats::Task::kWordExplanation:
      return "word explanation";
    case formats::Task::kReverseDictionary:
      return "reverse dictionary";
    case formats::Task::kOther:
      break;
  }
  return "Classical Chinese";
}

}  // namespace guwen::datagen
