#pragma once

// Exact elements of a tower. Coordinates of algebra elements and Gram entries
// are Laurent polynomials over the base; Gram reduction works in the fraction
// field k(x_1, ..., x_n), which embeds into k((x_1))...((x_n)). The square
// class of a nonzero element is the class of its leading monomial in the
// valuation order (outermost variable most significant), since the remaining
// factor 1 + (higher terms) is a square.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/numbers.hpp"

namespace wittforge {

/// Element of the base field: Q (also standing in for R) or F_p.
class Coeff {
 public:
  Coeff() = default;

  static Coeff rational(BigRational q) {
    Coeff c;
    c.q_ = std::move(q);
    return c;
  }
  static Coeff modular(std::uint64_t residue, std::uint64_t p) {
    Coeff c;
    c.p_ = p;
    c.r_ = residue % p;
    return c;
  }
  static Coeff from_rational(const BigRational& q, const FieldTower& field) {
    if (field.base() != BaseKind::Finite) return rational(q);
    const std::uint64_t p = field.characteristic();
    const std::uint64_t den = reduce_mod(boost::multiprecision::denominator(q), p);
    if (den == 0) throw Error(ErrorCode::ZeroElement, "denominator vanishes modulo " + std::to_string(p));
    return modular(detail::mulmod(reduce_mod(boost::multiprecision::numerator(q), p), inverse_mod(den, p), p), p);
  }
  static Coeff zero_of(const FieldTower& field) { return from_rational(0, field); }
  static Coeff one_of(const FieldTower& field) { return from_rational(1, field); }

  std::uint64_t modulus() const { return p_; }
  std::uint64_t residue() const { return r_; }
  const BigRational& value() const { return q_; }
  bool is_zero() const { return p_ ? r_ == 0 : q_ == 0; }

  Coeff operator-() const {
    Coeff c = *this;
    if (p_) {
      c.r_ = r_ == 0 ? 0 : p_ - r_;
    } else {
      c.q_ = -q_;
    }
    return c;
  }
  friend Coeff operator+(const Coeff& a, const Coeff& b) {
    check(a, b);
    Coeff c = a;
    if (a.p_) {
      c.r_ = (a.r_ + b.r_) % a.p_;
    } else {
      c.q_ = a.q_ + b.q_;
    }
    return c;
  }
  friend Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }
  friend Coeff operator*(const Coeff& a, const Coeff& b) {
    check(a, b);
    Coeff c = a;
    if (a.p_) {
      c.r_ = detail::mulmod(a.r_, b.r_, a.p_);
    } else {
      c.q_ = a.q_ * b.q_;
    }
    return c;
  }
  Coeff inverse() const {
    if (is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
    Coeff c = *this;
    if (p_) {
      c.r_ = inverse_mod(r_, p_);
    } else {
      c.q_ = 1 / q_;
    }
    return c;
  }
  friend bool operator==(const Coeff& a, const Coeff& b) {
    return a.p_ == b.p_ && (a.p_ ? a.r_ == b.r_ : a.q_ == b.q_);
  }
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

  std::string to_string() const { return p_ ? std::to_string(r_) : q_.str(); }

  /// Square class of this nonzero constant in the base of `field`.
  SquareClass square_class(const FieldRef& field) const {
    if (p_) return constant_square_class(field, BigRational(r_));
    return constant_square_class(field, q_);
  }

 private:
  static void check(const Coeff& a, const Coeff& b) {
    if (a.p_ != b.p_) throw Error(ErrorCode::FieldMismatch, "coefficients from different base fields");
  }

  std::uint64_t p_ = 0;
  std::uint64_t r_ = 0;
  BigRational q_{0};
};

using Exponents = std::array<std::int32_t, kMaxLaurentVars>;

/// Valuation order: compare the outermost variable first.
inline bool valuation_less(const Exponents& a, const Exponents& b) {
  for (std::size_t i = kMaxLaurentVars; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct Term {
  Exponents exps{};
  Coeff coeff;
};

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(FieldRef field) : field_(std::move(field)) {}

  static LaurentPoly constant(const FieldRef& field, const BigRational& c) {
    return monomial(field, Coeff::from_rational(c, *field), Exponents{});
  }
  static LaurentPoly monomial(const FieldRef& field, Coeff c, const Exponents& exps) {
    LaurentPoly p(field);
    if (!c.is_zero()) p.terms_.push_back({exps, std::move(c)});
    return p;
  }
  static LaurentPoly zero(const FieldRef& field) { return LaurentPoly(field); }
  static LaurentPoly one(const FieldRef& field) { return constant(field, 1); }

  /// Canonical representative of a square class as a monomial element.
  static LaurentPoly representative(const SquareClass& c) {
    const FieldRef& f = c.field();
    Coeff k;
    switch (f->base()) {
      case BaseKind::Rationals: k = Coeff::rational(BigRational(c.rational_base_value())); break;
      case BaseKind::Real: k = Coeff::rational(c.base_bit() ? -1 : 1); break;
      case BaseKind::Finite:
        if (c.base_bit() && f->degree() != 1) {
          throw Error(ErrorCode::UnsupportedField, "element arithmetic over F_q needs a prime base for u");
        }
        k = Coeff::modular(c.base_bit() ? f->nonresidue() : 1, f->characteristic());
        break;
    }
    Exponents e{};
    for (std::size_t i = 0; i < f->num_vars(); ++i) e[i] = c.exponent(i);
    return monomial(f, std::move(k), e);
  }

  static LaurentPoly from_monomial(const FieldRef& field, const Monomial& m) {
    Coeff k = Coeff::from_rational(m.constant, *field);
    if (m.nonresidue_power != 0) {
      if (field->base() != BaseKind::Finite || field->degree() != 1) {
        throw Error(ErrorCode::UnsupportedField, "the nonresidue symbol u needs a prime-field base");
      }
      int e = m.nonresidue_power;
      Coeff u = Coeff::modular(field->nonresidue(), field->characteristic());
      if (e < 0) {
        u = u.inverse();
        e = -e;
      }
      for (int i = 0; i < e; ++i) k = k * u;
    }
    Exponents exps{};
    for (const auto& [name, e] : m.powers) {
      const auto idx = field->var_index(name);
      if (!idx) throw Error(ErrorCode::UnknownVariable, "'" + name + "' is not a variable of " + field->descriptor());
      exps[*idx] += e;
    }
    return monomial(field, std::move(k), exps);
  }

  const FieldRef& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Term& leading() const {
    if (terms_.empty()) throw Error(ErrorCode::ZeroElement, "zero has no leading term");
    return terms_.front();
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exps == Exponents{}); }

  /// Coefficient of the constant monomial.
  Coeff constant_term() const {
    for (const auto& t : terms_) {
      if (t.exps == Exponents{}) return t.coeff;
    }
    return Coeff::zero_of(*field_);
  }

  SquareClass square_class() const {
    const Term& lead = leading();
    SquareClass c = lead.coeff.square_class(field_);
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < field_->num_vars(); ++i) {
      if (lead.exps[i] % 2 != 0) bits |= 1U << i;
    }
    return c * SquareClass::from_parts(field_, false, {}, bits);
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_field(a.field_, b.field_);
    LaurentPoly r(a.field_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && valuation_less(i->exps, j->exps))) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || valuation_less(j->exps, i->exps)) {
        r.terms_.push_back(*j++);
      } else {
        Coeff s = i->coeff + j->coeff;
        if (!s.is_zero()) r.terms_.push_back({i->exps, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_field(a.field_, b.field_);
    LaurentPoly r(a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        Term t;
        for (std::size_t k = 0; k < kMaxLaurentVars; ++k) t.exps[k] = x.exps[k] + y.exps[k];
        t.coeff = x.coeff * y.coeff;
        prod.push_back(std::move(t));
      }
    }
    std::sort(prod.begin(), prod.end(), [](const Term& s, const Term& t) { return valuation_less(s.exps, t.exps); });
    for (auto& t : prod) {
      if (!r.terms_.empty() && r.terms_.back().exps == t.exps) {
        r.terms_.back().coeff = r.terms_.back().coeff + t.coeff;
      } else {
        r.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(r.terms_, [](const Term& t) { return t.coeff.is_zero(); });
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Inverse of a monomial; other elements are not units of the polynomial ring.
  LaurentPoly monomial_inverse() const {
    if (terms_.size() != 1) throw Error(ErrorCode::ZeroElement, "only monomials are invertible");
    Term t = terms_[0];
    for (auto& e : t.exps) e = -e;
    t.coeff = t.coeff.inverse();
    LaurentPoly r(field_);
    r.terms_.push_back(std::move(t));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      std::string c = t.coeff.to_string();
      bool neg = !c.empty() && c[0] == '-';
      if (neg) c = c.substr(1);
      std::string mon;
      for (std::size_t i = 0; i < field_->num_vars(); ++i) {
        if (t.exps[i] == 0) continue;
        if (!mon.empty()) mon += "*";
        mon += field_->vars()[i];
        if (t.exps[i] != 1) mon += "^" + std::to_string(t.exps[i]);
      }
      std::string body = mon.empty() ? c : (c == "1" ? mon : c + "*" + mon);
      if (s.empty()) {
        s = (neg ? "-" : "") + body;
      } else {
        s += (neg ? "-" : "+") + body;
      }
    }
    return s;
  }

 private:
  FieldRef field_;
  std::vector<Term> terms_;  // ascending valuation order, no zero coefficients
};

/// Element of the fraction field of the Laurent polynomial ring.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(LaurentPoly num) : num_(std::move(num)), den_(LaurentPoly::one(num_.field())) {}
  RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::ZeroElement, "zero denominator");
    normalize();
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  SquareClass square_class() const { return num_.square_class() * den_.square_class(); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  RationalFunction inverse() const {
    if (is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
    return RationalFunction(den_, num_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string to_string() const {
    if (den_ == LaurentPoly::one(den_.field())) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  // Monomial denominators are folded into the numerator.
  void normalize() {
    if (den_.terms().size() == 1) {
      num_ = num_ * den_.monomial_inverse();
      den_ = LaurentPoly::one(num_.field());
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace wittforge
