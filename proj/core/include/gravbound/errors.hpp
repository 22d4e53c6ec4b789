// Copyright 2026 The gravbound Authors.
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

#ifndef GRAVBOUND_ERRORS_HPP_
#define GRAVBOUND_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gravbound {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Series evaluated at or beyond its radius of convergence, or a sum that
// failed the convergence test.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// A kernel coefficient b_k vanishes where the target has a_k != 0.
class UnlearnableTermError : public Error {
 public:
  using Error::Error;
};

// Coincident bodies in a force evaluation.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Rejection sampling could not place a body.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Gram matrix with duplicated inputs.
class SingularGramError : public Error {
 public:
  using Error::Error;
};

// Factorization failed even at the largest jitter level.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

// Malformed text input; the message carries the line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gravbound

#endif  // GRAVBOUND_ERRORS_HPP_
