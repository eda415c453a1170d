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

#include "ultrawrap/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ultrawrap/calculus.hpp"

namespace ultrawrap::expr {

bool Node::operator==(const Node& o) const {
  if (kind != o.kind || text != o.text || index != o.index || op != o.op || args.size() != o.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!(*args[i] == *o.args[i])) return false;
  }
  return true;
}

namespace {

using K = Node::Kind;

NodePtr make(K kind, std::string text = {}, int index = 0, char op = 0, std::vector<NodePtr> args = {}) {
  return std::make_shared<const Node>(Node{kind, std::move(text), index, op, std::move(args)});
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expression();
    skip();
    if (i_ != s_.size()) throw SyntaxError(std::string("unexpected '") + s_[i_] + "'", i_);
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw SyntaxError(std::string("expected '") + c + "'", i_);
    ++i_;
  }

  NodePtr expression() {
    NodePtr l = term();
    while (peek('+') || peek('-')) {
      const char op = s_[i_++];
      l = make(K::kBinary, {}, 0, op, {l, term()});
    }
    return l;
  }

  NodePtr term() {
    NodePtr l = unary();
    if (peek('*') || peek('/')) {
      const char op = s_[i_++];
      l = make(K::kBinary, {}, 0, op, {l, unary()});
      if (peek('*') || peek('/')) {
        throw SyntaxError("a product of three factors needs parentheses", i_);
      }
    }
    return l;
  }

  NodePtr unary() {
    if (peek('-')) {
      ++i_;
      return make(K::kNeg, {}, 0, 0, {unary()});
    }
    NodePtr a = atom();
    if (peek('^')) {
      ++i_;
      skip();
      const std::size_t at = i_;
      bool neg = false;
      if (i_ < s_.size() && s_[i_] == '-') {
        neg = true;
        ++i_;
      }
      const std::string digits = read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (digits.empty() || digits.size() > 6) throw SyntaxError("expected an integer exponent", at);
      const int e = std::stoi(digits);
      a = make(K::kPower, {}, neg ? -e : e, 0, {a});
      if (peek('^')) throw SyntaxError("iterated powers need parentheses", i_);
    }
    return a;
  }

  template <class Pred>
  std::string read_while(Pred pred) {
    const std::size_t start = i_;
    while (i_ < s_.size() && pred(s_[i_])) ++i_;
    return s_.substr(start, i_ - start);
  }

  NodePtr atom() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError("unexpected end of input", i_);
    const std::size_t at = i_;
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      NodePtr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::string d = read_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
      if (d.size() > 18) throw SyntaxError("integer literal too long", at);
      return make(K::kInteger, d);
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) throw SyntaxError(std::string("unexpected '") + c + "'", at);
    const std::string id = read_while([](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
    if ((id[0] == 'p' || id[0] == 't') && id.size() > 1 && i_ < s_.size() && s_[i_] == ':' &&
        std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      ++i_;
      std::string body = read_while([](char ch) {
        return std::isdigit(static_cast<unsigned char>(ch)) || std::islower(static_cast<unsigned char>(ch)) || ch == '.';
      });
      if (!body.empty() && body.back() == 'e' && i_ + 1 < s_.size() && (s_[i_] == '-' || s_[i_] == '+') &&
          std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
        body += s_[i_++];
        body += read_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
      }
      const std::string lit = id + ":" + body;
      try {
        UltraScalar::parse_literal(lit);
      } catch (const std::invalid_argument& e) {
        throw SyntaxError(e.what(), at);
      }
      return make(K::kLiteral, lit);
    }
    if (id == "x") return make(K::kVariable, id);
    if (id.size() == 2 && id[0] == 'u' && std::isdigit(static_cast<unsigned char>(id[1]))) {
      if (id[1] > '7') throw SyntaxError("generators are u0..u7", at);
      return make(K::kGenerator, {}, id[1] - '0');
    }
    if (id.size() == 2 && id[0] == 'q' && id[1] >= '1' && id[1] <= '3') {
      return make(K::kParameter, {}, id[1] - '0');
    }
    if (!peek('(')) throw SyntaxError("unknown name '" + id + "'", at);
    ++i_;
    std::vector<NodePtr> args{expression()};
    while (peek(',')) {
      ++i_;
      args.push_back(expression());
    }
    expect(')');
    return make(K::kCall, id, 0, 0, std::move(args));
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

bool is_sum(const NodePtr& e) { return e->kind == K::kBinary && (e->op == '+' || e->op == '-'); }

bool is_atom(const NodePtr& e) {
  switch (e->kind) {
    case K::kInteger:
    case K::kLiteral:
    case K::kGenerator:
    case K::kParameter:
    case K::kVariable:
    case K::kCall: return true;
    default: return e->kind == K::kBinary && !is_sum(e);  // already parenthesized
  }
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

}  // namespace

NodePtr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const NodePtr& e) {
  switch (e->kind) {
    case K::kInteger:
    case K::kLiteral:
    case K::kVariable: return e->text;
    case K::kGenerator: return "u" + std::to_string(e->index);
    case K::kParameter: return "q" + std::to_string(e->index);
    case K::kNeg: return "-" + (is_sum(e->args[0]) ? paren(print(e->args[0])) : print(e->args[0]));
    case K::kPower: {
      const NodePtr& b = e->args[0];
      const std::string base = is_atom(b) ? print(b) : paren(print(b));
      return base + "^" + std::to_string(e->index);
    }
    case K::kCall: {
      std::string s = e->text + "(";
      for (std::size_t i = 0; i < e->args.size(); ++i) s += (i ? ", " : "") + print(e->args[i]);
      return s + ")";
    }
    case K::kBinary: {
      const std::string l = print(e->args[0]);
      const std::string r = print(e->args[1]);
      if (is_sum(e)) return l + " " + e->op + " " + (is_sum(e->args[1]) ? paren(r) : r);
      return paren((is_sum(e->args[0]) ? paren(l) : l) + e->op + (is_sum(e->args[1]) ? paren(r) : r));
    }
  }
  return {};
}

// ---------------------------------------------------------------- values

namespace {

UltraScalar zero_of(const FieldSpec& f) { return UltraScalar::zero(f); }

Polynomial to_poly(const Value& v) {
  if (const auto* p = std::get_if<Polynomial>(&v)) return *p;
  if (const auto* s = std::get_if<UltraScalar>(&v)) return {{*s}};
  throw std::invalid_argument("algebra elements cannot enter polynomials in x");
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b, const FieldSpec& f) {
  Polynomial r;
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  for (std::size_t i = 0; i < n; ++i) {
    const UltraScalar x = i < a.coeffs.size() ? a.coeffs[i] : zero_of(f);
    const UltraScalar y = i < b.coeffs.size() ? b.coeffs[i] : zero_of(f);
    r.coeffs.push_back(x + y);
  }
  return r;
}

Polynomial poly_neg(const Polynomial& a) {
  Polynomial r = a;
  for (auto& c : r.coeffs) c = -c;
  return r;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b, const FieldSpec& f) {
  Polynomial r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, zero_of(f));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

CDElement to_element(const Value& v, const CDParamsPtr& params) {
  if (const auto* x = std::get_if<CDElement>(&v)) return *x;
  if (const auto* s = std::get_if<UltraScalar>(&v)) {
    if (!params) throw std::invalid_argument("algebra parameters are not set");
    return CDElement::scalar(params, *s);
  }
  throw std::invalid_argument("polynomials in x cannot enter algebra products");
}

CDParamsPtr params_of(const Value& a, const Value& b) {
  if (const auto* x = std::get_if<CDElement>(&a)) return x->params_ptr();
  if (const auto* x = std::get_if<CDElement>(&b)) return x->params_ptr();
  return nullptr;
}

Value binary(char op, const Value& a, const Value& b, const Context& ctx) {
  if (std::holds_alternative<UltraScalar>(a) && std::holds_alternative<UltraScalar>(b)) {
    const auto& x = std::get<UltraScalar>(a);
    const auto& y = std::get<UltraScalar>(b);
    switch (op) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      default: return x / y;
    }
  }
  if (std::holds_alternative<Polynomial>(a) || std::holds_alternative<Polynomial>(b)) {
    const Polynomial x = to_poly(a);
    switch (op) {
      case '+': return poly_add(x, to_poly(b), ctx.field);
      case '-': return poly_add(x, poly_neg(to_poly(b)), ctx.field);
      case '*': return poly_mul(x, to_poly(b), ctx.field);
      default: {
        const auto* c = std::get_if<UltraScalar>(&b);
        if (!c) throw std::invalid_argument("polynomials can only be divided by scalars");
        Polynomial r = x;
        for (auto& t : r.coeffs) t = t / *c;
        return r;
      }
    }
  }
  const CDParamsPtr params = params_of(a, b);
  if (op == '/' && std::holds_alternative<UltraScalar>(b)) return std::get<CDElement>(a) / std::get<UltraScalar>(b);
  const CDElement x = to_element(a, params);
  const CDElement y = to_element(b, params);
  switch (op) {
    case '+': return x + y;
    case '-': return x - y;
    case '*': return cd_mul(x, y);
    default: return cd_mul(x, cd_inv(y));
  }
}

Value power(const Value& v, int e, const Context& ctx) {
  if (const auto* s = std::get_if<UltraScalar>(&v)) return s->pow(e);
  if (e < 0) {
    if (const auto* x = std::get_if<CDElement>(&v)) return power(cd_inv(*x), -e, ctx);
    throw std::invalid_argument("negative powers of polynomials are not polynomials");
  }
  if (const auto* x = std::get_if<CDElement>(&v)) {
    // Powers are well defined: the algebras are power associative.
    CDElement r = CDElement::one(x->params_ptr());
    for (int i = 0; i < e; ++i) r = cd_mul(r, *x);
    return r;
  }
  Polynomial r{{UltraScalar::one(ctx.field)}};
  for (int i = 0; i < e; ++i) r = poly_mul(r, std::get<Polynomial>(v), ctx.field);
  return r;
}

Value call(const Node& n, const Context& ctx) {
  auto arity = [&](std::size_t k) {
    if (n.args.size() != k) {
      throw std::invalid_argument(n.text + " takes " + std::to_string(k) + " argument(s)");
    }
  };
  const std::string& f = n.text;
  if (f == "conj" || f == "n" || f == "tr" || f == "inv") {
    arity(1);
    const Value v = eval(n.args[0], ctx);
    if (const auto* s = std::get_if<UltraScalar>(&v)) {
      if (f == "conj") return *s;
      if (f == "n") return *s * *s;
      if (f == "tr") return *s + *s;
      return s->inverse();
    }
    if (const auto* x = std::get_if<CDElement>(&v)) {
      if (f == "conj") return conj(*x);
      if (f == "n") return norm_value(*x);
      if (f == "tr") return trace(*x);
      return cd_inv(*x);
    }
    throw std::invalid_argument(f + " is not defined on polynomials");
  }
  if (f == "phi" || f == "d") {
    if (n.args.size() < 3) throw std::invalid_argument(f + " needs f, x0 and directions");
    const auto fn = calc::ScalarFn<UltraScalar>::polynomial(as_polynomial(eval(n.args[0], ctx), ctx.field));
    const UltraScalar x0 = as_scalar(eval(n.args[1], ctx));
    std::vector<UltraScalar> rest;
    for (std::size_t i = 2; i < n.args.size(); ++i) rest.push_back(as_scalar(eval(n.args[i], ctx)));
    if (f == "d") return calc::differential_n(fn, x0, rest);
    if (rest.size() % 2 != 0) throw std::invalid_argument("phi takes pairs (v_j, t_j)");
    calc::QuotientPoint q{x0, {}, {}};
    for (std::size_t i = 0; i < rest.size(); i += 2) {
      q.v.push_back(rest[i]);
      q.t.push_back(rest[i + 1]);
    }
    return calc::phi_n(fn, q);
  }
  throw std::invalid_argument("unknown function " + f);
}

}  // namespace

Value eval(const NodePtr& e, const Context& ctx) {
  switch (e->kind) {
    case K::kInteger: return UltraScalar::from_integer(std::stoll(e->text), ctx.field);
    case K::kLiteral: {
      UltraScalar s = UltraScalar::parse_literal(e->text);
      if (s.kind() != ctx.field.kind || s.p() != ctx.field.p) {
        throw FieldError("literal " + e->text + " is not in " + ctx.field.name());
      }
      return s;
    }
    case K::kGenerator:
      if (!ctx.params) throw std::invalid_argument("u" + std::to_string(e->index) + " needs algebra parameters");
      if (e->index >= ctx.params->dimension()) {
        throw std::invalid_argument("u" + std::to_string(e->index) + " is not a generator of " +
                                    ctx.params->to_string());
      }
      return CDElement::generator(ctx.params, e->index);
    case K::kParameter:
      if (!ctx.params || e->index > ctx.params->level()) {
        throw std::invalid_argument("q" + std::to_string(e->index) + " is not set");
      }
      return ctx.params->q()[e->index - 1];
    case K::kVariable:
      return Polynomial{{UltraScalar::zero(ctx.field), UltraScalar::one(ctx.field)}};
    case K::kNeg: {
      const Value v = eval(e->args[0], ctx);
      if (const auto* s = std::get_if<UltraScalar>(&v)) return -*s;
      if (const auto* x = std::get_if<CDElement>(&v)) return -*x;
      return poly_neg(std::get<Polynomial>(v));
    }
    case K::kBinary: return binary(e->op, eval(e->args[0], ctx), eval(e->args[1], ctx), ctx);
    case K::kPower: return power(eval(e->args[0], ctx), e->index, ctx);
    case K::kCall: return call(*e, ctx);
  }
  throw std::logic_error("bad expression node");
}

Value eval(const std::string& text, const Context& ctx) { return eval(parse(text), ctx); }

std::string render(const Value& v) {
  if (const auto* s = std::get_if<UltraScalar>(&v)) return render_scalar(*s);
  if (const auto* x = std::get_if<CDElement>(&v)) return x->to_string();
  const auto& p = std::get<Polynomial>(v);
  std::string out;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    if (p.coeffs[k].is_zero()) continue;
    std::string c = render_scalar(p.coeffs[k]);
    const bool neg = c[0] == '-';
    if (neg) c = c.substr(1);
    std::string term = k == 0 ? c : (c == "1" ? "" : c + "*") + (k == 1 ? "x" : "x^" + std::to_string(k));
    out += out.empty() ? (neg ? "-" : "") + term : (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::vector<UltraScalar> as_polynomial(const Value& v, const FieldSpec& field) {
  if (const auto* x = std::get_if<CDElement>(&v)) {
    if (!x->is_scalar()) throw std::invalid_argument("expected a polynomial in x");
    return {(*x)[0]};
  }
  std::vector<UltraScalar> c = to_poly(v).coeffs;
  if (c.empty()) c.push_back(UltraScalar::zero(field));
  return c;
}

CDElement as_element(const Value& v, const CDParamsPtr& params) { return to_element(v, params); }

UltraScalar as_scalar(const Value& v) {
  if (const auto* s = std::get_if<UltraScalar>(&v)) return *s;
  if (const auto* x = std::get_if<CDElement>(&v)) {
    if (x->is_scalar()) return (*x)[0];
  }
  if (const auto* p = std::get_if<Polynomial>(&v)) {
    bool constant = true;
    for (std::size_t k = 1; k < p->coeffs.size(); ++k) constant = constant && p->coeffs[k].is_zero();
    if (constant && !p->coeffs.empty()) return p->coeffs[0];
  }
  throw std::invalid_argument("expected a scalar");
}

}  // namespace ultrawrap::expr
