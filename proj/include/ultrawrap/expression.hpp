// Copyright 2026 The ultrawrap Authors
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

// Expressions over scalars, algebra generators and one polynomial variable.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)?      a*b*c is rejected
//   unary   := '-' unary | power
//   power   := atom ('^' ['-'] integer)?
//   atom    := integer | literal | u0..u7 | q1..q3 | x
//            | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Literals use the scalar literal syntax ("p5:2.31e-1", "t3:1.2e0").
// Functions: conj, n, tr, inv, phi(f, x0, v1, t1, ..., vn, tn) and
// d(f, x0, v1, ..., vn) for polynomials f in x. Products are never
// re-associated; printing parenthesizes every product.

#ifndef ULTRAWRAP_EXPRESSION_HPP_
#define ULTRAWRAP_EXPRESSION_HPP_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/padic.hpp"

namespace ultrawrap::expr {

class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { kInteger, kLiteral, kGenerator, kParameter, kVariable, kNeg, kBinary, kPower, kCall };
  Kind kind;
  std::string text;  // integer digits, literal, function name
  int index = 0;     // generator or parameter index, power exponent
  char op = 0;       // '+', '-', '*', '/'
  std::vector<NodePtr> args;

  bool operator==(const Node& o) const;
};

NodePtr parse(const std::string& text);
// Canonical form; parse(print(e)) is structurally equal to e.
std::string print(const NodePtr& e);

// Polynomial in x with scalar coefficients, lowest degree first.
struct Polynomial {
  std::vector<UltraScalar> coeffs;
};

using Value = std::variant<UltraScalar, CDElement, Polynomial>;

struct Context {
  FieldSpec field;
  CDParamsPtr params;  // needed for u_j and q_j
};

Value eval(const NodePtr& e, const Context& ctx);
Value eval(const std::string& text, const Context& ctx);
std::string render(const Value& v);

// Coefficients of a polynomial value; scalars become constants.
std::vector<UltraScalar> as_polynomial(const Value& v, const FieldSpec& field);
// The value as an algebra element over params (scalars are embedded).
CDElement as_element(const Value& v, const CDParamsPtr& params);
UltraScalar as_scalar(const Value& v);

}  // namespace ultrawrap::expr

#endif  // ULTRAWRAP_EXPRESSION_HPP_
