#pragma once

// Local-global theory over Q: Hilbert symbols at every place, Hasse
// invariants (convention prod_{i<j} (a_i, a_j)_v), and isotropy decided by
// Hasse-Minkowski on invariant tuples.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/form.hpp"
#include "wittforge/numbers.hpp"

namespace wittforge {

/// A place of Q: prime == 0 is the real place.
struct Place {
  std::uint64_t prime = 0;

  static Place real() { return {0}; }
  static Place finite(std::uint64_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::ZeroArgument, std::to_string(p) + " is not prime");
    return {p};
  }
  bool is_real() const { return prime == 0; }
  std::string to_string() const { return is_real() ? "inf" : std::to_string(prime); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime == b.prime; }
  friend bool operator!=(const Place& a, const Place& b) { return a.prime != b.prime; }
  // The real place sorts last, after all primes.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_real() != b.is_real()) return b.is_real();
    return a.prime < b.prime;
  }
};

namespace detail {

inline const FieldRef& rational_field() {
  static const FieldRef q = FieldTower::rationals();
  return q;
}

inline void require_rational_base(const SquareClass& c) {
  if (c.field()->base() != BaseKind::Rationals || c.field()->is_laurent()) {
    throw Error(ErrorCode::FieldMismatch, "expected a square class over Q, got one over " + c.field()->descriptor());
  }
}

inline bool contains_prime(const SquareClass& c, std::uint64_t p) {
  return std::binary_search(c.primes().begin(), c.primes().end(), p);
}

/// The class with p removed, reduced modulo m (m coprime to everything else).
inline std::uint64_t unit_part_mod(const SquareClass& c, std::uint64_t p, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (auto q : c.primes()) {
    if (q != p) r = mulmod(r, q % m, m);
  }
  if (c.base_bit()) r = (m - r) % m;
  return r;
}

}  // namespace detail

inline SquareClass rational_class(const BigRational& a) {
  if (a == 0) throw Error(ErrorCode::ZeroArgument, "Hilbert symbol argument is zero");
  return constant_square_class(detail::rational_field(), a);
}

/// (a, b)_v for square classes over Q.
inline int hilbert_symbol(const SquareClass& a, const SquareClass& b, const Place& v) {
  detail::require_rational_base(a);
  detail::require_rational_base(b);
  if (v.is_real()) return (a.base_bit() && b.base_bit()) ? -1 : 1;
  const std::uint64_t p = v.prime;
  const int alpha = detail::contains_prime(a, p) ? 1 : 0;
  const int beta = detail::contains_prime(b, p) ? 1 : 0;
  if (p != 2) {
    const std::uint64_t ua = detail::unit_part_mod(a, p, p);
    const std::uint64_t ub = detail::unit_part_mod(b, p, p);
    int s = (alpha && beta && (p % 4 == 3)) ? -1 : 1;
    if (beta) s *= legendre(ua, p);
    if (alpha) s *= legendre(ub, p);
    return s;
  }
  const std::uint64_t ua = detail::unit_part_mod(a, 2, 8);
  const std::uint64_t ub = detail::unit_part_mod(b, 2, 8);
  const auto eps = [](std::uint64_t u) { return ((u - 1) / 2) & 1U; };
  const auto omega = [](std::uint64_t u) { return ((u * u - 1) / 8) & 1U; };
  const std::uint64_t e = eps(ua) * eps(ub) + alpha * omega(ub) + beta * omega(ua);
  return (e & 1U) ? -1 : 1;
}

inline int hilbert_symbol(const BigRational& a, const BigRational& b, const Place& v) {
  return hilbert_symbol(rational_class(a), rational_class(b), v);
}

/// The places where x is a local square.
inline bool is_local_square(const SquareClass& x, const Place& v) {
  detail::require_rational_base(x);
  if (v.is_real()) return !x.base_bit();
  const std::uint64_t p = v.prime;
  if (detail::contains_prime(x, p)) return false;
  if (p == 2) return detail::unit_part_mod(x, 2, 8) == 1;
  return legendre(detail::unit_part_mod(x, p, p), p) == 1;
}

/// {inf, 2} together with every prime dividing one of the classes.
inline std::set<Place> finite_support(const std::vector<SquareClass>& classes) {
  std::set<Place> s{Place::real(), Place{2}};
  for (const auto& c : classes) {
    for (auto q : c.primes()) s.insert(Place{q});
  }
  return s;
}

inline std::set<Place> ramification_set(const SquareClass& a, const SquareClass& b) {
  std::set<Place> out;
  for (const auto& v : finite_support({a, b})) {
    if (hilbert_symbol(a, b, v) == -1) out.insert(v);
  }
  return out;
}

inline std::set<Place> ramification_set(const BigRational& a, const BigRational& b) {
  return ramification_set(rational_class(a), rational_class(b));
}

struct RationalInvariants {
  std::size_t dim = 0;
  SquareClass disc{detail::rational_field()};
  std::map<Place, int> hasse;  // over the finite support; +1 elsewhere
  std::size_t positives = 0;
  std::size_t negatives = 0;

  int hasse_at(const Place& v) const {
    auto it = hasse.find(v);
    return it == hasse.end() ? 1 : it->second;
  }
  std::set<Place> hasse_minus_places() const {
    std::set<Place> s;
    for (const auto& [v, h] : hasse) {
      if (h == -1) s.insert(v);
    }
    return s;
  }
  std::set<Place> support() const {
    std::set<Place> s{Place::real(), Place{2}};
    for (const auto& [v, h] : hasse) s.insert(v);
    for (auto q : disc.primes()) s.insert(Place{q});
    return s;
  }

  friend bool operator==(const RationalInvariants& a, const RationalInvariants& b) {
    return a.dim == b.dim && a.disc == b.disc && a.positives == b.positives && a.negatives == b.negatives &&
           a.hasse_minus_places() == b.hasse_minus_places();
  }
};

inline void require_rational_form(const DiagonalForm& f) {
  if (f.field()->base() != BaseKind::Rationals || f.field()->is_laurent()) {
    throw Error(ErrorCode::FieldMismatch, "expected a form over Q, got one over " + f.field()->descriptor());
  }
}

inline RationalInvariants rational_invariants(const DiagonalForm& f) {
  require_rational_form(f);
  RationalInvariants inv;
  inv.dim = f.dim();
  inv.disc = SquareClass(f.field());
  for (const auto& a : f.entries()) {
    inv.disc = inv.disc * a;
    (a.base_bit() ? inv.negatives : inv.positives) += 1;
  }
  for (const auto& v : finite_support(f.entries())) {
    int h = 1;
    for (std::size_t i = 0; i < f.dim(); ++i) {
      for (std::size_t j = i + 1; j < f.dim(); ++j) h *= hilbert_symbol(f.entries()[i], f.entries()[j], v);
    }
    inv.hasse[v] = h;
  }
  return inv;
}

/// Isotropy at v of any form with the given invariants.
inline bool local_isotropy(const RationalInvariants& inv, const Place& v) {
  if (v.is_real()) return inv.positives > 0 && inv.negatives > 0;
  const SquareClass minus_one = SquareClass::minus_one(inv.disc.field());
  switch (inv.dim) {
    case 0:
    case 1: return false;
    case 2: return is_local_square(-inv.disc, v);
    case 3: return hilbert_symbol(minus_one, -inv.disc, v) == inv.hasse_at(v);
    case 4:
      return !is_local_square(inv.disc, v) || inv.hasse_at(v) == hilbert_symbol(minus_one, minus_one, v);
    default: return true;
  }
}

inline bool local_isotropy(const DiagonalForm& f, const Place& v) {
  return local_isotropy(rational_invariants(f), v);
}

/// A place where the form is anisotropic, if any (real place first).
inline std::optional<Place> local_obstruction(const RationalInvariants& inv) {
  auto support = inv.support();
  if (!local_isotropy(inv, Place::real())) return Place::real();
  for (const auto& v : support) {
    if (!local_isotropy(inv, v)) return v;
  }
  return std::nullopt;
}

inline std::optional<Place> local_obstruction(const DiagonalForm& f) {
  return local_obstruction(rational_invariants(f));
}

inline bool global_isotropy(const RationalInvariants& inv) { return !local_obstruction(inv).has_value(); }
inline bool global_isotropy(const DiagonalForm& f) { return global_isotropy(rational_invariants(f)); }

/// Invariants of q' where q = H + q'.
inline RationalInvariants strip_hyperbolic_plane(const RationalInvariants& inv) {
  if (inv.dim < 2 || inv.positives == 0 || inv.negatives == 0) {
    throw Error(ErrorCode::PreconditionFailed, "no hyperbolic plane to strip");
  }
  RationalInvariants out;
  out.dim = inv.dim - 2;
  out.disc = -inv.disc;
  out.positives = inv.positives - 1;
  out.negatives = inv.negatives - 1;
  // c(H + q') = c(H) c(q') (-1, d(q'))_v with c(H) = 1.
  const SquareClass minus_one = SquareClass::minus_one(inv.disc.field());
  for (const auto& v : inv.support()) out.hasse[v] = inv.hasse_at(v) * hilbert_symbol(minus_one, out.disc, v);
  return out;
}

struct RationalWitt {
  std::size_t witt_index = 0;
  RationalInvariants kernel;
};

inline RationalWitt witt_index_rational(const RationalInvariants& inv) {
  RationalWitt w{0, inv};
  while (w.kernel.dim >= 2 && global_isotropy(w.kernel)) {
    w.kernel = strip_hyperbolic_plane(w.kernel);
    ++w.witt_index;
  }
  return w;
}

inline RationalWitt witt_index_rational(const DiagonalForm& f) { return witt_index_rational(rational_invariants(f)); }

}  // namespace wittforge
