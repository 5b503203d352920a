#pragma once

// Recursive-descent parser for the textual notation used by the CLI:
//
//   field    := ("Q" | "R" | "F" int) ("((" ident "))")*     rightmost is outermost
//   poly     := ["+"|"-"] term (("+"|"-") term)*
//   term     := factor ("*" factor)*
//   factor   := int ["/" int] | ident ["^" ["-"] int]
//   form     := "[" monomial ("," monomial)* "]" | "<<" [monomial ("," monomial)*] ">>"
//   element  := "(" poly ("," poly)* ")"
//   slots    := monomial ("," monomial)*
//
// `u` names the least positive quadratic nonresidue of a prime base field.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/form.hpp"
#include "wittforge/numbers.hpp"
#include "wittforge/scalar.hpp"

namespace wittforge::dsl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::string input, std::size_t position)
      : std::runtime_error(message), message_(std::move(message)), input_(std::move(input)), position_(position) {}

  std::size_t position() const { return position_; }

  /// Message followed by the input and a caret under the offending column.
  std::string annotated() const {
    return "parse error at column " + std::to_string(position_ + 1) + ": " + message_ + "\n  " + input_ + "\n  " +
           std::string(position_, ' ') + "^";
  }

 private:
  std::string message_;
  std::string input_;
  std::size_t position_;
};

struct FieldSpec {
  BaseKind base = BaseKind::Rationals;
  std::uint64_t order = 0;
  std::vector<std::string> vars;
};

struct FormLiteral {
  bool pfister = false;
  std::vector<Monomial> items;
};

using PolyLiteral = std::vector<Monomial>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FieldSpec field() {
    FieldSpec spec;
    skip_ws();
    const char c = peek();
    if (c == 'Q') {
      ++pos_;
      spec.base = BaseKind::Rationals;
    } else if (c == 'R') {
      ++pos_;
      spec.base = BaseKind::Real;
    } else if (c == 'F') {
      ++pos_;
      spec.base = BaseKind::Finite;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected field order after 'F'");
      spec.order = small_unsigned();
    } else {
      fail("expected 'Q', 'R' or 'F<order>'");
    }
    while (true) {
      skip_ws();
      if (!lookahead("((")) break;
      pos_ += 2;
      skip_ws();
      spec.vars.push_back(ident());
      skip_ws();
      expect("))");
    }
    end();
    return spec;
  }

  PolyLiteral polynomial() {
    PolyLiteral p = poly_until("");
    end();
    return p;
  }

  Monomial monomial_only() {
    Monomial m = signed_term();
    end();
    return m;
  }

  FormLiteral form() {
    FormLiteral f;
    skip_ws();
    if (lookahead("<<")) {
      pos_ += 2;
      f.pfister = true;
      skip_ws();
      if (!lookahead(">>")) f.items = monomial_list();
      skip_ws();
      expect(">>");
    } else if (peek() == '[') {
      ++pos_;
      skip_ws();
      if (peek() != ']') f.items = monomial_list();
      skip_ws();
      expect("]");
    } else {
      fail("expected '[' or '<<'");
    }
    end();
    return f;
  }

  std::vector<PolyLiteral> element() {
    std::vector<PolyLiteral> coords;
    skip_ws();
    expect("(");
    while (true) {
      coords.push_back(poly_until(",)"));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(")");
      break;
    }
    end();
    return coords;
  }

  std::vector<Monomial> slots() {
    skip_ws();
    std::vector<Monomial> out;
    if (!at_end()) out = monomial_list();
    end();
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, std::string(text_), pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool lookahead(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(std::string_view s) {
    if (!lookahead(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }
  void end() {
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
  }

  std::string ident() {
    const std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected identifier");
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  BigInt integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 200) {
      pos_ = start;
      fail("integer literal too long");
    }
    // leading zeros would be read as an octal prefix
    std::string_view digits = text_.substr(start, pos_ - start);
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return BigInt(std::string(digits));
  }

  std::uint64_t small_unsigned() {
    const std::size_t start = pos_;
    BigInt v = integer();
    if (v > BigInt(std::numeric_limits<std::uint32_t>::max())) {
      pos_ = start;
      fail("number too large");
    }
    return v.convert_to<std::uint64_t>();
  }

  void factor(Monomial& m) {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigRational q(integer());
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        BigInt d = integer();
        if (d == 0) {
          pos_ = at;
          fail("division by zero");
        }
        q /= BigRational(d);
      }
      m.constant *= q;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = ident();
      int e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
          neg = true;
          ++pos_;
        }
        const std::size_t at = pos_;
        std::uint64_t v = small_unsigned();
        if (v > 1'000'000) {
          pos_ = at;
          fail("exponent too large");
        }
        e = neg ? -static_cast<int>(v) : static_cast<int>(v);
      }
      if (name == "u") {
        m.nonresidue_power += e;
      } else {
        m.powers.emplace_back(std::move(name), e);
      }
    } else {
      fail("expected number or identifier");
    }
  }

  Monomial term() {
    Monomial m;
    factor(m);
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      factor(m);
    }
    return m;
  }

  Monomial signed_term() {
    skip_ws();
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos_;
    }
    Monomial m = term();
    if (neg) m.constant = -m.constant;
    return m;
  }

  PolyLiteral poly_until(std::string_view stops) {
    PolyLiteral p;
    p.push_back(signed_term());
    while (true) {
      skip_ws();
      const char c = peek();
      if (at_end() || stops.find(c) != std::string_view::npos) break;
      if (c != '+' && c != '-') fail("expected '+', '-' or end of polynomial");
      ++pos_;
      Monomial m = term();
      if (c == '-') m.constant = -m.constant;
      p.push_back(std::move(m));
    }
    return p;
  }

  std::vector<Monomial> monomial_list() {
    std::vector<Monomial> out;
    out.push_back(signed_term());
    while (true) {
      skip_ws();
      if (peek() != ',') break;
      ++pos_;
      out.push_back(signed_term());
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Builds the tower; F<q> accepts a prime or the square of a prime.
inline FieldRef make_field(const FieldSpec& spec) {
  if (spec.base != BaseKind::Finite) return FieldTower::make(spec.base, 0, 1, spec.vars);
  const std::uint64_t q = spec.order;
  if (q % 2 == 0) throw Error(ErrorCode::InvalidField, "characteristic 2 is not supported");
  std::uint64_t p = 3;
  while (p * p <= q && q % p != 0) p += 2;
  if (q % p != 0 || p * p > q) p = q;
  unsigned degree = 0;
  std::uint64_t r = q;
  while (r > 1 && r % p == 0) {
    r /= p;
    ++degree;
  }
  if (r != 1) throw Error(ErrorCode::InvalidField, std::to_string(q) + " is not a prime power");
  return FieldTower::finite(p, spec.vars, degree);
}

inline FieldRef parse_field(std::string_view text) { return make_field(Parser(text).field()); }

inline LaurentPoly to_poly(const FieldRef& field, const PolyLiteral& p) {
  LaurentPoly r = LaurentPoly::zero(field);
  for (const auto& m : p) r += LaurentPoly::from_monomial(field, m);
  return r;
}

inline SquareClass to_class(const FieldRef& field, const Monomial& m, ErrorCode zero_code = ErrorCode::ZeroElement) {
  if (m.constant == 0) throw Error(zero_code, "zero entry");
  return canonical_square_class(field, m);
}

inline std::vector<SquareClass> to_classes(const FieldRef& field, const std::vector<Monomial>& ms,
                                           ErrorCode zero_code = ErrorCode::ZeroElement) {
  std::vector<SquareClass> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(to_class(field, m, zero_code));
  return out;
}

inline DiagonalForm to_form(const FieldRef& field, const FormLiteral& lit) {
  if (lit.pfister) return pfister(field, to_classes(field, lit.items, ErrorCode::ZeroSlot));
  return DiagonalForm(field, to_classes(field, lit.items));
}

inline DiagonalForm parse_form(const FieldRef& field, std::string_view text) {
  return to_form(field, Parser(text).form());
}

inline SquareClass parse_class(const FieldRef& field, std::string_view text) {
  return to_class(field, Parser(text).monomial_only());
}

inline std::vector<SquareClass> parse_slots(const FieldRef& field, std::string_view text) {
  return to_classes(field, Parser(text).slots(), ErrorCode::ZeroSlot);
}

inline LaurentPoly parse_poly(const FieldRef& field, std::string_view text) {
  return to_poly(field, Parser(text).polynomial());
}

inline std::vector<LaurentPoly> parse_element_coords(const FieldRef& field, std::string_view text) {
  std::vector<LaurentPoly> out;
  for (const auto& p : Parser(text).element()) out.push_back(to_poly(field, p));
  return out;
}

}  // namespace wittforge::dsl
