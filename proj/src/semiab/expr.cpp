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

#include "semiab/expr.hpp"

#include <cctype>

#include "semiab/error.hpp"

namespace semiab::expr {

namespace {

constexpr long kMaxExponent = 1L << 20;

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars, const FieldSpec& field)
      : s_(text), nvars_(nvars), field_(field) {}

  RationalFunction parse() {
    RationalFunction f = binary(0);
    skip_space();
    if (pos_ < s_.size()) fail("expected operator or end of input, found '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  std::string found() {
    const char c = peek();
    return c == '\0' ? "end of input" : "'" + std::string(1, c) + "'";
  }

  static int precedence(char op) {
    switch (op) {
      case '+':
      case '-': return 1;
      case '*':
      case '/': return 2;
      default: return -1;
    }
  }

  RationalFunction constant(const Scalar& c) const { return RationalFunction(MPoly::constant(field_, nvars_, c)); }

  // Precedence climbing over the left-associative binary operators.
  RationalFunction binary(int min_prec) {
    RationalFunction lhs = unary();
    for (;;) {
      const char op = peek();
      const int prec = precedence(op);
      if (prec < 0 || prec < min_prec) return lhs;
      const std::size_t at = pos_;
      ++pos_;
      RationalFunction rhs = binary(prec + 1);
      switch (op) {
        case '+': lhs = lhs + rhs; break;
        case '-': lhs = lhs - rhs; break;
        case '*': lhs = lhs * rhs; break;
        default:
          if (rhs.num().is_zero()) fail_at("division by the zero polynomial", at);
          lhs = lhs / rhs;
      }
    }
  }

  RationalFunction unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (peek() != '^') return base;
    ++pos_;
    const std::size_t at = pos_;
    const Integer e = exponent();
    if (abs(e) > kMaxExponent) fail_at("exponent " + e.get_str() + " is too large", at);
    if (e < 0 && base.num().is_zero()) fail_at("negative power of zero", at);
    return base.pow(e.get_si());
  }

  Integer exponent() {
    bool negative = false;
    if (peek() == '-') {
      ++pos_;
      negative = true;
    }
    Integer base;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      base = exponent();
      if (peek() != ')') fail("expected ')' in exponent, found " + found());
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = integer();
    } else {
      fail("expected integer exponent, found " + found());
    }
    if (peek() == '^') {
      ++pos_;
      const std::size_t at = pos_;
      const Integer e = exponent();
      if (e < 0) fail_at("exponent of an exponent must be nonnegative", at);
      if (e > 64 || (abs(base) > 1 && bit_length(abs(base)) * e.get_ui() > 64))
        fail_at("exponent is too large", at);
      Integer r;
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_ui());
      base = r;
    }
    return negative ? Integer(-base) : base;
  }

  Integer integer() {
    const std::size_t begin = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(begin, pos_ - begin)), 10);
  }

  RationalFunction primary() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      RationalFunction inner = binary(0);
      if (peek() != ')') fail("expected ')', found " + found());
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(Scalar::from_integer(field_, integer()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name(s_.substr(pos_, end - pos_));
      if (name == "t") {
        if (!field_.is_function_field()) fail_at("'t' is only available over F_p(t)", at);
        pos_ = end;
        return constant(Scalar::t(field_));
      }
      if (name.size() > 1 && name[0] == 'x' &&
          name.find_first_not_of("0123456789", 1) == std::string::npos && name[1] != '0') {
        const unsigned long index = std::stoul(name.substr(1));
        if (index == 0 || index > nvars_)
          fail_at("unknown variable " + name + " (available: " +
                      (nvars_ ? "x1..x" + std::to_string(nvars_) : std::string("none")) + ")",
                  at);
        pos_ = end;
        return RationalFunction(MPoly::variable(field_, nvars_, index - 1));
      }
      fail_at("unknown identifier '" + name + "'", at);
    }
    fail("expected number, variable or '(', found " + found());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  FieldSpec field_;
};

}  // namespace

RationalFunction parse_expression(std::string_view text, std::size_t nvars, const FieldSpec& field) {
  return Parser(text, nvars, field).parse();
}

Scalar parse_constant(std::string_view text, const FieldSpec& field) {
  const RationalFunction f = parse_expression(text, 0, field);
  const std::vector<Scalar> none;
  const auto v = f.evaluate(none);
  if (!v) throw ParseError("constant has a zero denominator", 0);
  return *v;
}

std::string unparse(const RationalFunction& f) { return f.to_string(); }

}  // namespace semiab::expr
