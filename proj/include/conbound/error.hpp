// Copyright 2026 The conbound Authors. All Rights Reserved.
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
// =============================================================================
#ifndef CONBOUND_ERROR_HPP_
#define CONBOUND_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace conbound {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the requested quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs are consistent but the formula is indeterminate (zero variance,
/// zero spread, all-zero allocation multipliers).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver ran out of iterations.
class IterationError : public Error {
 public:
  IterationError(const std::string& what, double last_iterate, double residual)
      : Error(what), last_iterate_(last_iterate), residual_(residual) {}

  double last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  double last_iterate_;
  double residual_;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace conbound

#endif  // CONBOUND_ERROR_HPP_
