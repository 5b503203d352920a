#pragma once

// Square-class arithmetic over towers k((x_1))...((x_n)) with k one of Q, R or
// a finite field of odd characteristic. Quadratic form theory over these
// fields only ever needs k^x / k^x2, so that group is the currency here.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/numbers.hpp"

namespace wittforge {

enum class BaseKind { Rationals, Finite, Real };

inline constexpr std::size_t kMaxLaurentVars = 6;

class FieldTower;
using FieldRef = std::shared_ptr<const FieldTower>;

class FieldTower {
 public:
  static FieldRef rationals(std::vector<std::string> vars = {}) {
    return make(BaseKind::Rationals, 0, 1, std::move(vars));
  }
  static FieldRef real(std::vector<std::string> vars = {}) {
    return make(BaseKind::Real, 0, 1, std::move(vars));
  }
  /// F_q with q = p^degree, p an odd prime.
  static FieldRef finite(std::uint64_t p, std::vector<std::string> vars = {}, unsigned degree = 1) {
    return make(BaseKind::Finite, p, degree, std::move(vars));
  }

  static FieldRef make(BaseKind kind, std::uint64_t p, unsigned degree, std::vector<std::string> vars) {
    if (kind == BaseKind::Finite) {
      if (p == 2) throw Error(ErrorCode::InvalidField, "characteristic 2 is not supported");
      if (!is_prime(p)) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not an odd prime");
      if (degree == 0 || degree > 8) throw Error(ErrorCode::InvalidField, "unsupported extension degree");
    } else {
      p = 0;
      degree = 1;
    }
    if (vars.size() > kMaxLaurentVars) {
      throw Error(ErrorCode::InvalidField, "at most " + std::to_string(kMaxLaurentVars) + " Laurent variables");
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].empty()) throw Error(ErrorCode::InvalidField, "empty variable name");
      if (vars[i] == "u") throw Error(ErrorCode::InvalidField, "'u' is reserved for the fixed nonresidue");
      for (std::size_t j = 0; j < i; ++j) {
        if (vars[i] == vars[j]) throw Error(ErrorCode::InvalidField, "duplicate variable " + vars[i]);
      }
    }
    FieldRef residue;
    if (!vars.empty()) {
      residue = make(kind, p, degree, std::vector<std::string>(vars.begin(), vars.end() - 1));
    }
    return FieldRef(new FieldTower(kind, p, degree, std::move(vars), std::move(residue)));
  }

  BaseKind base() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return degree_; }
  /// Size of the finite base field; 0 for Q and R.
  std::uint64_t base_order() const {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < degree_; ++i) q *= p_;
    return kind_ == BaseKind::Finite ? q : 0;
  }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  bool is_laurent() const { return !vars_.empty(); }

  std::optional<std::size_t> var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return i;
    }
    return std::nullopt;
  }
  const std::string& outer_var() const {
    if (vars_.empty()) throw Error(ErrorCode::NotLaurent, descriptor() + " has no Laurent variable");
    return vars_.back();
  }

  /// The tower with its outermost variable removed, or null for a bare base.
  const FieldRef& residue_field() const { return residue_; }

  bool finite_square_classes() const { return kind_ != BaseKind::Rationals; }

  /// Least positive quadratic nonresidue modulo p (prime fields only).
  std::uint64_t nonresidue() const { return nonresidue_; }

  bool minus_one_is_square() const {
    switch (kind_) {
      case BaseKind::Finite: return base_order() % 4 == 1;
      case BaseKind::Real:
      case BaseKind::Rationals: return false;
    }
    return false;
  }

  std::string descriptor() const {
    std::string s;
    switch (kind_) {
      case BaseKind::Rationals: s = "Q"; break;
      case BaseKind::Real: s = "R"; break;
      case BaseKind::Finite: s = "F" + std::to_string(base_order()); break;
    }
    for (const auto& v : vars_) s += "((" + v + "))";
    return s;
  }

  friend bool operator==(const FieldTower& a, const FieldTower& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.degree_ == b.degree_ && a.vars_ == b.vars_;
  }

 private:
  FieldTower(BaseKind kind, std::uint64_t p, unsigned degree, std::vector<std::string> vars, FieldRef residue)
      : kind_(kind), p_(p), degree_(degree), vars_(std::move(vars)), residue_(std::move(residue)) {
    if (kind_ == BaseKind::Finite && degree_ == 1) nonresidue_ = least_nonresidue(p_);
  }

  BaseKind kind_;
  std::uint64_t p_;
  unsigned degree_;
  std::vector<std::string> vars_;
  FieldRef residue_;
  std::uint64_t nonresidue_ = 0;
};

inline bool same_field(const FieldRef& a, const FieldRef& b) { return a == b || (a && b && *a == *b); }

inline void require_same_field(const FieldRef& a, const FieldRef& b) {
  if (!same_field(a, b)) {
    throw Error(ErrorCode::FieldMismatch, a->descriptor() + " vs " + b->descriptor());
  }
}

/// Element of k^x / k^x2 for a tower k. The base part is a sign bit plus a
/// squarefree prime set for Q, the bit "is the class of u" for finite fields,
/// and a sign bit for R. Every Laurent variable contributes one exponent bit
/// (bit i is variable i, innermost first).
class SquareClass {
 public:
  explicit SquareClass(FieldRef field) : field_(std::move(field)) {}

  static SquareClass from_parts(FieldRef field, bool base_bit, std::vector<std::uint64_t> primes,
                                std::uint32_t var_bits) {
    if (field->base() != BaseKind::Rationals && !primes.empty()) {
      throw Error(ErrorCode::UnsupportedField, "prime support only exists over Q");
    }
    if (var_bits >> field->num_vars()) throw Error(ErrorCode::UnknownVariable, "exponent bit out of range");
    std::sort(primes.begin(), primes.end());
    SquareClass c(std::move(field));
    c.base_bit_ = base_bit;
    c.primes_ = std::move(primes);
    c.var_bits_ = var_bits;
    return c;
  }

  static SquareClass minus_one(const FieldRef& field) {
    SquareClass c(field);
    c.base_bit_ = !field->minus_one_is_square();
    return c;
  }

  /// The class of u (finite bases) or -1 (Q, R).
  static SquareClass base_generator(const FieldRef& field) {
    SquareClass c(field);
    c.base_bit_ = true;
    return c;
  }

  static SquareClass variable(const FieldRef& field, std::size_t index) {
    if (index >= field->num_vars()) throw Error(ErrorCode::UnknownVariable, "variable index out of range");
    SquareClass c(field);
    c.var_bits_ = 1U << index;
    return c;
  }

  const FieldRef& field() const { return field_; }
  bool base_bit() const { return base_bit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::uint32_t var_bits() const { return var_bits_; }
  int exponent(std::size_t var) const { return static_cast<int>((var_bits_ >> var) & 1U); }
  bool is_one() const { return !base_bit_ && primes_.empty() && var_bits_ == 0; }
  bool is_base() const { return var_bits_ == 0; }

  /// Position in enumerate_square_classes order (finite square-class groups).
  std::uint64_t index() const { return (static_cast<std::uint64_t>(var_bits_) << 1U) | (base_bit_ ? 1U : 0U); }

  SquareClass with_field(FieldRef field) const {
    SquareClass c = *this;
    c.field_ = std::move(field);
    return c;
  }

  friend SquareClass operator*(const SquareClass& x, const SquareClass& y) {
    require_same_field(x.field_, y.field_);
    SquareClass r(x.field_);
    r.base_bit_ = x.base_bit_ != y.base_bit_;
    r.var_bits_ = x.var_bits_ ^ y.var_bits_;
    std::set_symmetric_difference(x.primes_.begin(), x.primes_.end(), y.primes_.begin(), y.primes_.end(),
                                  std::back_inserter(r.primes_));
    return r;
  }

  SquareClass operator-() const { return *this * minus_one(field_); }

  friend bool operator==(const SquareClass& x, const SquareClass& y) {
    return x.base_bit_ == y.base_bit_ && x.var_bits_ == y.var_bits_ && x.primes_ == y.primes_ &&
           same_field(x.field_, y.field_);
  }
  friend bool operator!=(const SquareClass& x, const SquareClass& y) { return !(x == y); }
  friend bool operator<(const SquareClass& x, const SquareClass& y) {
    if (x.var_bits_ != y.var_bits_) return x.var_bits_ < y.var_bits_;
    if (x.base_bit_ != y.base_bit_) return !x.base_bit_;
    return x.primes_ < y.primes_;
  }

  /// Signed squarefree integer representing the base part over Q.
  BigInt rational_base_value() const {
    BigInt v = 1;
    for (auto q : primes_) v *= q;
    return base_bit_ ? BigInt(-v) : v;
  }

  std::string to_string() const {
    std::string base;
    bool base_trivial = false;
    switch (field_->base()) {
      case BaseKind::Rationals: {
        BigInt v = 1;
        for (auto q : primes_) v *= q;
        base = (base_bit_ ? "-" : "") + v.str();
        base_trivial = v == 1;
        break;
      }
      case BaseKind::Real:
        base = base_bit_ ? "-1" : "1";
        base_trivial = true;
        break;
      case BaseKind::Finite:
        base = base_bit_ ? "u" : "1";
        base_trivial = !base_bit_;
        break;
    }
    std::string vars;
    for (std::size_t i = 0; i < field_->num_vars(); ++i) {
      if (exponent(i)) vars += (vars.empty() ? "" : "*") + field_->vars()[i];
    }
    if (vars.empty()) return base;
    if (base_trivial) return (base == "-1" ? "-" : "") + vars;
    return base + "*" + vars;
  }

 private:
  FieldRef field_;
  bool base_bit_ = false;
  std::vector<std::uint64_t> primes_;
  std::uint32_t var_bits_ = 0;
};

/// Symbolic monomial c * u^k * prod v_i^e_i as written by users; u denotes
/// the fixed nonresidue of a finite base.
struct Monomial {
  BigRational constant{1};
  int nonresidue_power = 0;
  std::vector<std::pair<std::string, int>> powers;
};

/// Square class of a nonzero base-field constant.
inline SquareClass constant_square_class(const FieldRef& field, const BigRational& c) {
  if (c == 0) throw Error(ErrorCode::ZeroElement, "zero has no square class");
  switch (field->base()) {
    case BaseKind::Rationals: {
      auto num = odd_power_primes(boost::multiprecision::numerator(c));
      auto den = odd_power_primes(boost::multiprecision::denominator(c));
      std::vector<std::uint64_t> primes;
      std::set_symmetric_difference(num.begin(), num.end(), den.begin(), den.end(), std::back_inserter(primes));
      return SquareClass::from_parts(field, c < 0, std::move(primes), 0);
    }
    case BaseKind::Real:
      return SquareClass::from_parts(field, c < 0, {}, 0);
    case BaseKind::Finite: {
      const std::uint64_t p = field->characteristic();
      const std::uint64_t num = reduce_mod(boost::multiprecision::numerator(c), p);
      const std::uint64_t den = reduce_mod(boost::multiprecision::denominator(c), p);
      if (den == 0) throw Error(ErrorCode::ZeroElement, "denominator vanishes modulo " + std::to_string(p));
      if (num == 0) throw Error(ErrorCode::ZeroElement, c.str() + " is 0 modulo " + std::to_string(p));
      // Every element of the prime field is a square in a proper extension of even degree.
      const bool nonsquare = field->degree() % 2 == 1 && legendre(detail::mulmod(num, den, p), p) == -1;
      return SquareClass::from_parts(field, nonsquare, {}, 0);
    }
  }
  throw Error(ErrorCode::UnsupportedField, "unknown base");
}

inline SquareClass canonical_square_class(const FieldRef& field, const Monomial& m) {
  SquareClass c = constant_square_class(field, m.constant);
  if (m.nonresidue_power != 0) {
    if (field->base() != BaseKind::Finite) {
      throw Error(ErrorCode::UnsupportedField, "the nonresidue symbol u only exists over finite bases");
    }
    if (m.nonresidue_power % 2 != 0) c = c * SquareClass::base_generator(field);
  }
  for (const auto& [name, e] : m.powers) {
    const auto idx = field->var_index(name);
    if (!idx) throw Error(ErrorCode::UnknownVariable, "'" + name + "' is not a variable of " + field->descriptor());
    if (e % 2 != 0) c = c * SquareClass::variable(field, *idx);
  }
  return c;
}

inline SquareClass sq_mul(const SquareClass& x, const SquareClass& y) { return x * y; }

inline std::vector<SquareClass> enumerate_square_classes(const FieldRef& field) {
  if (!field->finite_square_classes()) {
    throw Error(ErrorCode::InfiniteSquareClassGroup, field->descriptor() + " has infinitely many square classes");
  }
  const std::uint64_t n = std::uint64_t{1} << (1 + field->num_vars());
  std::vector<SquareClass> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(SquareClass::from_parts(field, (i & 1U) != 0, {}, static_cast<std::uint32_t>(i >> 1U)));
  }
  return out;
}

struct ResidueSplit {
  int parity;
  SquareClass unit_class;
};

/// x = unit_class * t^parity for the outermost variable t.
inline ResidueSplit residue_split(const FieldRef& field, const SquareClass& x) {
  require_same_field(field, x.field());
  if (!field->is_laurent()) throw Error(ErrorCode::NotLaurent, field->descriptor() + " has no Laurent variable");
  const std::size_t outer = field->num_vars() - 1;
  const int parity = x.exponent(outer);
  const std::uint32_t mask = (1U << outer) - 1U;
  return {parity, SquareClass::from_parts(field->residue_field(), x.base_bit(), x.primes(), x.var_bits() & mask)};
}

/// Inverse of residue_split.
inline SquareClass lift_residue(const FieldRef& field, const SquareClass& unit_class, int parity) {
  if (!field->is_laurent()) throw Error(ErrorCode::NotLaurent, field->descriptor() + " has no Laurent variable");
  require_same_field(field->residue_field(), unit_class.field());
  const std::size_t outer = field->num_vars() - 1;
  return SquareClass::from_parts(field, unit_class.base_bit(), unit_class.primes(),
                                 unit_class.var_bits() | (parity ? (1U << outer) : 0U));
}

/// Model of field(sqrt(delta)) together with the induced map on square classes.
struct QuadraticExtension {
  FieldRef base;
  FieldRef extended;
  SquareClass delta;
  bool ramified;

  SquareClass transfer(const SquareClass& x) const {
    require_same_field(base, x.field());
    if (!ramified) {
      // Odd-degree-over-prime-field nonresidues become squares; variables are untouched.
      return SquareClass::from_parts(extended, false, {}, x.var_bits());
    }
    // sqrt(a*t) = r gives t = r^2 / a, so the class of t maps to the class of a.
    const std::size_t outer = base->num_vars() - 1;
    const std::uint32_t inner = x.var_bits() & ((1U << outer) - 1U);
    bool bit = x.base_bit();
    if (x.exponent(outer)) bit = bit != delta.base_bit();
    return SquareClass::from_parts(extended, bit, {}, inner);
  }
};

inline QuadraticExtension extend_quadratic(const FieldRef& field, const SquareClass& delta) {
  require_same_field(field, delta.field());
  if (delta.is_one()) throw Error(ErrorCode::DeltaIsSquare, "delta = " + delta.to_string() + " is a square");
  if (field->base() != BaseKind::Finite) {
    throw Error(ErrorCode::UnsupportedDelta, "quadratic extensions are modelled over finite bases only");
  }
  const std::size_t n = field->num_vars();
  if (delta.is_base()) {
    auto ext = FieldTower::finite(field->characteristic(), field->vars(), field->degree() * 2);
    return {field, ext, delta, false};
  }
  const std::size_t outer = n - 1;
  if (delta.var_bits() != (1U << outer)) {
    throw Error(ErrorCode::UnsupportedDelta,
                delta.to_string() + " involves an inner variable; decide splitting with splits_over_quadratic");
  }
  auto vars = field->vars();
  std::string fresh = "r";
  for (int k = 1; std::find(vars.begin(), vars.end(), fresh) != vars.end(); ++k) fresh = "r" + std::to_string(k);
  vars.back() = fresh;
  auto ext = FieldTower::finite(field->characteristic(), std::move(vars), field->degree());
  return {field, ext, delta, true};
}

}  // namespace wittforge
