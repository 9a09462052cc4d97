// Copyright 2026 The gazedp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAZEDP_COMMON_ERRORS_H_
#define GAZEDP_COMMON_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gazedp {

// Precondition violated by the caller (bad parameter, empty input, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input text. `line` is 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that references unknown vocabulary (attribute, category).
class SchemaError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Parsed data that breaks a dataset invariant.
class ValidationError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace gazedp

#endif  // GAZEDP_COMMON_ERRORS_H_
