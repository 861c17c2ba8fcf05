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

// Text syntax for rational functions in x1..xN over Q or F_p(t).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= '-'? (integer | '(' exponent ')') ('^' exponent)?
//   primary := integer | 't' | 'x' digits | '(' expr ')'
//
// Exponents are integers; '^' is right-associative and binds tightest.

#pragma once

#include <string>
#include <string_view>

#include "semiab/field.hpp"
#include "semiab/poly.hpp"

namespace semiab::expr {

/// Throws ParseError with the 0-based offset of the offending character.
RationalFunction parse_expression(std::string_view text, std::size_t nvars, const FieldSpec& field);

/// A field element written without variables, e.g. "t^2 + 1" or "-3/4".
Scalar parse_constant(std::string_view text, const FieldSpec& field);

/// Text that parse_expression maps back to the same function.
std::string unparse(const RationalFunction& f);

}  // namespace semiab::expr
