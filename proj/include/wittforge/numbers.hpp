#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wittforge/error.hpp"

namespace wittforge {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

__extension__ using U128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<U128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

inline std::uint64_t factor_bound_from_env() {
  if (const char* env = std::getenv("WITTFORGE_FACTOR_BOUND")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2) return v;
  }
  return 1'000'000;
}

inline std::atomic<std::uint64_t>& factor_bound_storage() {
  static std::atomic<std::uint64_t> bound{factor_bound_from_env()};
  return bound;
}

}  // namespace detail

/// Trial-division bound used when factoring rational square classes.
/// Initialized from WITTFORGE_FACTOR_BOUND (default 10^6).
inline std::uint64_t factor_bound() { return detail::factor_bound_storage().load(); }
inline void set_factor_bound(std::uint64_t bound) { detail::factor_bound_storage().store(bound < 2 ? 2 : bound); }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Legendre symbol (a|p) for an odd prime p, as -1, 0 or 1.
inline int legendre(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return detail::powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline std::int64_t legendre_signed(std::int64_t a, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = a % sp;
  if (r < 0) r += sp;
  return legendre(static_cast<std::uint64_t>(r), p);
}

inline std::uint64_t least_nonresidue(std::uint64_t p) {
  for (std::uint64_t a = 2; a < p; ++a) {
    if (legendre(a, p) == -1) return a;
  }
  throw Error(ErrorCode::InvalidField, "no quadratic nonresidue modulo " + std::to_string(p));
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw Error(ErrorCode::ZeroElement, "inverse of 0 modulo " + std::to_string(p));
  return detail::powmod(a, p - 2, p);
}

inline std::uint64_t reduce_mod(const BigInt& n, std::uint64_t p) {
  BigInt r = n % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

/// Primes occurring to an odd power in |n|, sorted ascending. Trial division
/// up to factor_bound(); a leftover cofactor is accepted only when it is
/// provably prime (smaller than the bound squared).
inline std::vector<std::uint64_t> odd_power_primes(BigInt n) {
  if (n < 0) n = -n;
  if (n == 0) throw Error(ErrorCode::ZeroElement, "cannot factor 0");
  std::vector<std::uint64_t> out;
  const std::uint64_t bound = factor_bound();
  std::uint64_t d = 2;
  for (; d <= bound; d += (d == 2 ? 1 : 2)) {
    if (BigInt(d) * d > n) break;
    int parity = 0;
    while (n % d == 0) {
      n /= d;
      parity ^= 1;
    }
    if (parity) out.push_back(d);
  }
  if (n > 1) {
    if (BigInt(d) * d <= n) {
      throw Error(ErrorCode::FactorBoundExceeded,
                  "cofactor " + n.str() + " not factored within bound " + std::to_string(bound));
    }
    if (n > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::FactorBoundExceeded, "prime cofactor " + n.str() + " exceeds 64 bits");
    }
    out.push_back(n.convert_to<std::uint64_t>());
  }
  return out;
}

}  // namespace wittforge
