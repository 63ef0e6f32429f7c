// Copyright 2026 The divfront Authors
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

namespace divfront {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible lengths or dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (e.g. a curve
/// parameter outside its interval, a covariance that is not positive definite).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The closed form does not exist for these operands. This is not the same as
/// an infinite divergence, which is returned as +inf.
class DivergenceUndefined : public Error {
 public:
  using Error::Error;
};

/// The requested combination (order, side, family) is not implemented.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Invalid tuning parameter (cluster count, neighbour count, grid size...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace divfront
