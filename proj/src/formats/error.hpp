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

#include <stdexcept>
#include <string>

namespace guwen::formats {

enum class FormatErrorKind {
  kMissingSlash,
  kEmptySegment,
  kUnknownTag,
  kInvalidSegment,
  kNoStructureFound,
};

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorKind kind, std::string token, const std::string& message)
      : std::runtime_error(message), kind_(kind), token_(std::move(token)) {}

  FormatErrorKind kind() const { return kind_; }
  const std::string& token() const { return token_; }

 private:
  FormatErrorKind kind_;
  std::string token_;
};

}  // namespace guwen::formats
