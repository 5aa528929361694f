/*
 * Copyright 2026 The rrsynth authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RRSYNTH_ERRORS_HPP
#define RRSYNTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rrsynth {

/// Base class for all rrsynth errors. `exit_code` matches the CLI convention:
/// 1 usage/parse, 2 semantic, 3 size/budget limit, 4 comparison mismatch.
class Error : public std::runtime_error {
 public:
  Error(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// Malformed textual input (game files, strategy files, CLI lasso syntax).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(1, "parse error at " + std::to_string(line) + ":" +
                     std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& msg) : Error(1, "parse error: " + msg), line_(0), column_(0) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Structurally well-formed input that violates a game-level rule
/// (dead-end vertex, dangling edge, unknown vertex in a condition, ...).
class SemanticError : public Error {
 public:
  explicit SemanticError(const std::string& msg) : Error(2, msg) {}
};

/// A construction would exceed a configured size cap.
class SizeLimitError : public Error {
 public:
  explicit SizeLimitError(const std::string& msg) : Error(3, msg) {}
};

/// A brute-force enumeration would exceed its budget.
class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& msg) : Error(3, msg) {}
};

}  // namespace rrsynth

#endif  // RRSYNTH_ERRORS_HPP
