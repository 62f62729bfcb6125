// Copyright 2026 The Procflow Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace procflow {

// Base class for all user-facing failures. Internal invariant violations use
// std::logic_error instead and indicate a bug, not bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A name was looked up in a theory that does not define it.
class UnknownNameError : public Error {
 public:
  explicit UnknownNameError(const std::string& kind, const std::string& name)
      : Error("unknown " + kind + ": '" + name + "'") {}
};

// Boundary types failed to line up in a composition. `index` is the first
// offending boundary position.
class TypeMismatchError : public Error {
 public:
  TypeMismatchError(const std::string& where, std::size_t index,
                    const std::string& expected, const std::string& got)
      : Error(where + ": type mismatch at boundary index " +
              std::to_string(index) + " (expected " + expected + ", got " +
              got + ")"),
        index(index) {}
  explicit TypeMismatchError(const std::string& msg) : Error(msg), index(0) {}
  std::size_t index;
};

// Two diagrams over different theories were combined or compared.
class TheoryMismatchError : public Error {
 public:
  TheoryMismatchError() : Error("diagrams belong to different theories") {}
  explicit TheoryMismatchError(const std::string& msg) : Error(msg) {}
};

// A tensor, model entry, or boundary has the wrong shape or is missing.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An operation that requires a circuit was given a diagram with feedback,
// cups, caps, or loops.
class NotACircuitError : public Error {
 public:
  using Error::Error;
};

// A Choi matrix had an eigenvalue below -cutoff, or was not Hermitian to
// begin with.
class NotCompletelyPositiveError : public Error {
 public:
  explicit NotCompletelyPositiveError(double eigenvalue)
      : Error("matrix is not completely positive (eigenvalue " +
              std::to_string(eigenvalue) + ")"),
        eigenvalue(eigenvalue) {}
  explicit NotCompletelyPositiveError(const std::string& msg)
      : Error(msg), eigenvalue(0.0) {}
  double eigenvalue;
};

// A construction that requires causal inputs received a non-causal one.
class CausalityError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Line and column are 1-based; they are 0 when the
// file parsed as JSON but violated the schema, in which case the message
// names the offending field.
class ParseError : public Error {
 public:
  ParseError(const std::string& origin, std::size_t line, std::size_t column,
             const std::string& what)
      : Error(origin + ":" + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

}  // namespace procflow
