// Copyright 2026 The semiab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semiab {

/// Base class of every error raised by the library. The C API maps the
/// concrete subclasses onto its status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, bad expression syntax, inconsistent dimensions,
/// mismatched ambients or fields, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression or document, with a 0-based character offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An orbit left the torus or hit a vanishing denominator.
class UndefinedOrbit : public Error {
 public:
  UndefinedOrbit(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A configured size, height or iteration bound was exceeded.
class ResourceExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace semiab
