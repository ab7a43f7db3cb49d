#pragma once

// Expression grammar (whitespace insignificant):
//
//   rational ::= int ['/' int]
//   atom     ::= rational | var | '(' expr ')'
//   power    ::= atom ['^' uint]
//   term     ::= power {'*' power}
//   expr     ::= ['-'] term {('+'|'-') term}

#include <cctype>
#include <string>
#include <string_view>

#include "poissym/errors.hpp"
#include "poissym/poly.hpp"
#include "poissym/var_ring.hpp"

namespace poissym {

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const VarRing& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    skip_ws();
    bool negate = accept('-');
    Poly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = power();
    while (accept('*')) acc *= power();
    return acc;
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a non-negative integer exponent");
      std::string digits = read_digits();
      if (digits.size() > 6) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      if (accept('/')) {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected denominator");
        const std::size_t den_pos = pos_;
        std::string den = read_digits();
        if (mpz_class(den) == 0) throw ParseError("zero denominator", den_pos);
        num += "/" + den;
      }
      Rational r(num);
      r.canonicalize();
      return ring_.constant(r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_.index_of(name);
      if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return ring_.var(*idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  const VarRing& ring_;
  std::size_t pos_ = 0;
};

inline std::string monomial_string(const Monomial& m, const VarRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

}  // namespace detail

/// Parses `text` into a polynomial over `ring`. Throws ParseError carrying
/// the offending column on syntax errors and unknown variable names.
inline Poly parse_poly(std::string_view text, const VarRing& ring) {
  return detail::ExprParser(text, ring).parse();
}

/// Deterministic rendering, terms in decreasing order under `ord`.
/// Re-parsing the result yields the same polynomial.
inline std::string canonical_string(const Poly& f, const VarRing& ring,
                                    const MonomialOrder& ord = MonomialOrder::grevlex()) {
  if (f.is_zero()) return "0";
  if (f.nvars() != ring.size()) throw InputError("canonical_string: ring arity mismatch");
  std::vector<const Poly::Term*> terms;
  for (const auto& t : f.terms()) terms.push_back(&t);
  if (!(ord == MonomialOrder::grevlex()))
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const Poly::Term* a, const Poly::Term* b) { return ord.greater(a->mono, b->mono); });
  std::string out;
  bool first = true;
  for (const auto* t : terms) {
    const bool negative = t->coeff < 0;
    const Rational magnitude = negative ? Rational(-t->coeff) : t->coeff;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = detail::monomial_string(t->mono, ring);
    if (mono.empty()) {
      out += magnitude.get_str();
    } else if (magnitude == 1) {
      out += mono;
    } else {
      out += magnitude.get_str() + '*' + mono;
    }
  }
  return out;
}

}  // namespace poissym
