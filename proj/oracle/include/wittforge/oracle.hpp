#pragma once

// Brute-force reference implementations. Nothing here calls into the
// decision procedures of the library; inputs are plain integers and every
// verdict comes from an explicit search.
//
// Local isotropy over a complete discretely valued ring R with uniformizer
// pi uses Hensel's lemma: with entries of valuation 0 or 1, a primitive zero
// modulo pi^2 (odd residue characteristic) or modulo 32 (over Z_2) exists iff
// the form is isotropic. The finite quotients are searched by meet in the
// middle over coordinate halves.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wittforge::oracle {

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Squarefree part of a nonzero integer, sign kept.
inline std::int64_t squarefree_part(std::int64_t a) {
  if (a == 0) throw std::invalid_argument("squarefree_part(0)");
  const std::int64_t sign = a < 0 ? -1 : 1;
  std::uint64_t n = static_cast<std::uint64_t>(a < 0 ? -a : a);
  std::uint64_t out = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e % 2) out *= d;
  }
  out *= n;
  return sign * static_cast<std::int64_t>(out);
}

__extension__ using U128 = unsigned __int128;

/// Z/p^m, elements 0..p^m-1.
class IntegerQuotient {
 public:
  IntegerQuotient(std::uint64_t p, unsigned m) : p_(p), n_(ipow(p, m)) {}
  std::uint64_t size() const { return n_; }
  std::uint64_t add(std::uint64_t x, std::uint64_t y) const { return (x + y) % n_; }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const {
    return static_cast<std::uint64_t>(static_cast<U128>(x) * y % n_);
  }
  std::uint64_t neg(std::uint64_t x) const { return (n_ - x) % n_; }
  bool is_unit(std::uint64_t x) const { return x % p_ != 0; }
  std::uint64_t from_int(std::int64_t a) const {
    const auto n = static_cast<std::int64_t>(n_);
    return static_cast<std::uint64_t>(((a % n) + n) % n);
  }

 private:
  std::uint64_t p_;
  std::uint64_t n_;
};

/// F_p[t]/(t^m); element x stores the coefficient of t^k as base-p digit k.
class SeriesQuotient {
 public:
  SeriesQuotient(std::uint64_t p, unsigned m) : p_(p), m_(m), n_(ipow(p, m)) {}
  std::uint64_t size() const { return n_; }
  std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t r = 0;
    std::uint64_t place = 1;
    for (unsigned k = 0; k < m_; ++k) {
      r += ((x % p_ + y % p_) % p_) * place;
      x /= p_;
      y /= p_;
      place *= p_;
    }
    return r;
  }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const {
    std::vector<std::uint64_t> a = digits(x);
    std::vector<std::uint64_t> b = digits(y);
    std::vector<std::uint64_t> c(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
      for (unsigned j = 0; i + j < m_; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
    }
    return compose(c);
  }
  std::uint64_t neg(std::uint64_t x) const {
    std::vector<std::uint64_t> a = digits(x);
    for (auto& d : a) d = (p_ - d) % p_;
    return compose(a);
  }
  bool is_unit(std::uint64_t x) const { return x % p_ != 0; }
  /// c * t^e with 0 <= e < m.
  std::uint64_t monomial(std::int64_t c, unsigned e) const {
    const auto p = static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(((c % p) + p) % p) * ipow(p_, e);
  }

 private:
  std::vector<std::uint64_t> digits(std::uint64_t x) const {
    std::vector<std::uint64_t> d(m_);
    for (unsigned k = 0; k < m_; ++k) {
      d[k] = x % p_;
      x /= p_;
    }
    return d;
  }
  std::uint64_t compose(const std::vector<std::uint64_t>& d) const {
    std::uint64_t r = 0;
    for (unsigned k = m_; k-- > 0;) r = r * p_ + d[k];
    return r;
  }

  std::uint64_t p_;
  unsigned m_;
  std::uint64_t n_;
};

/// Whether sum coeffs[i] * x_i^2 = 0 has a solution in R^n with some x_i a unit.
template <typename Ring>
bool primitive_zero_exists(const Ring& r, const std::vector<std::uint64_t>& coeffs) {
  const std::size_t n = coeffs.size();
  if (n == 0) return false;
  const std::uint64_t size = r.size();
  std::vector<std::uint64_t> sq(size);
  for (std::uint64_t x = 0; x < size; ++x) sq[x] = r.mul(x, x);

  // flag bit 0: reached by some vector, bit 1: reached by a vector with a unit entry
  const auto sweep = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::uint8_t> flags(size, 0);
    std::vector<std::uint64_t> x(hi - lo, 0);
    while (true) {
      std::uint64_t v = 0;
      bool unit = false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        v = r.add(v, r.mul(coeffs[lo + i], sq[x[i]]));
        unit = unit || r.is_unit(x[i]);
      }
      flags[v] |= static_cast<std::uint8_t>(unit ? 3 : 1);
      std::size_t pos = 0;
      while (pos < x.size() && ++x[pos] == size) x[pos++] = 0;
      if (pos == x.size()) break;
    }
    return flags;
  };
  const std::size_t mid = n / 2;
  const auto a = sweep(0, mid);
  const auto b = sweep(mid, n);
  for (std::uint64_t v = 0; v < size; ++v) {
    const std::uint8_t fa = a[v];
    const std::uint8_t fb = b[r.neg(v)];
    if (((fa & 2) && (fb & 1)) || ((fa & 1) && (fb & 2))) return true;
  }
  return false;
}

/// Isotropy of <a_1, ..., a_n> over Q_p (p = 0: over R).
inline bool local_isotropic(const std::vector<std::int64_t>& entries, std::uint64_t p) {
  if (entries.size() > 4) throw std::invalid_argument("local oracle supports dimension <= 4");
  if (p == 0) {
    bool pos = false;
    bool neg = false;
    for (auto a : entries) (a > 0 ? pos : neg) = true;
    return pos && neg;
  }
  if (!is_prime_u64(p)) throw std::invalid_argument("not a prime");
  const IntegerQuotient r(p, p == 2 ? 5 : 2);
  std::vector<std::uint64_t> coeffs;
  for (auto a : entries) coeffs.push_back(r.from_int(squarefree_part(a)));
  return primitive_zero_exists(r, coeffs);
}

/// (a, b)_p from solvability of z^2 = a x^2 + b y^2 over Q_p (p = 0: over R).
inline int hilbert_symbol(std::int64_t a, std::int64_t b, std::uint64_t p) {
  return local_isotropic({1, -a, -b}, p) ? 1 : -1;
}

/// Isotropy over F_p((t)) of sum c_i t^{e_i} x_i^2 via primitive zeros in
/// F_p[t]/(t^precision); exact for precision >= 3.
inline bool laurent_isotropic(std::uint64_t p, const std::vector<std::pair<std::int64_t, int>>& entries,
                              unsigned precision = 4) {
  if (entries.size() > 4) throw std::invalid_argument("laurent oracle supports dimension <= 4");
  const SeriesQuotient r(p, precision);
  std::vector<std::uint64_t> coeffs;
  for (const auto& [c, e] : entries) {
    // t^2 is a square, so only the parity of the exponent matters.
    coeffs.push_back(r.monomial(c, static_cast<unsigned>(((e % 2) + 2) % 2)));
  }
  return primitive_zero_exists(r, coeffs);
}

inline std::optional<std::int64_t> exact_sqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  if (s * s != v) return std::nullopt;
  return s;
}

/// Nonzero integer vector with sum a_i x_i^2 = 0 and max |x_i| <= height.
inline std::optional<std::vector<std::int64_t>> integer_witness(const std::vector<std::int64_t>& a,
                                                                std::int64_t height) {
  const std::size_t n = a.size();
  if (n < 2) return std::nullopt;
  if (n > 4) throw std::invalid_argument("witness search supports dimension <= 4");
  const auto solve_last = [&](std::int64_t partial, std::int64_t coeff) -> std::optional<std::int64_t> {
    if (partial % coeff != 0) return std::nullopt;
    auto s = exact_sqrt(-partial / coeff);
    if (!s || *s > height) return std::nullopt;
    return s;
  };
  if (n == 2) {
    for (std::int64_t x = 1; x <= height; ++x) {
      if (auto y = solve_last(a[0] * x * x, a[1])) return std::vector<std::int64_t>{x, *y};
    }
    return std::nullopt;
  }
  if (n == 3) {
    for (std::int64_t x = 0; x <= height; ++x) {
      for (std::int64_t y = 0; y <= height; ++y) {
        if (x == 0 && y == 0) continue;
        if (auto z = solve_last(a[0] * x * x + a[1] * y * y, a[2])) return std::vector<std::int64_t>{x, y, *z};
      }
    }
    return std::nullopt;
  }
  std::unordered_map<std::int64_t, std::pair<std::int64_t, std::int64_t>> left;
  left.reserve(static_cast<std::size_t>((height + 1) * (height + 1)));
  for (std::int64_t x = 0; x <= height; ++x) {
    for (std::int64_t y = 0; y <= height; ++y) left.emplace(a[0] * x * x + a[1] * y * y, std::make_pair(x, y));
  }
  for (std::int64_t z = 0; z <= height; ++z) {
    for (std::int64_t w = 0; w <= height; ++w) {
      const std::int64_t v = -(a[2] * z * z + a[3] * w * w);
      if (z == 0 && w == 0) {
        // need a nonzero left half with value 0
        for (std::int64_t x = 0; x <= height; ++x) {
          for (std::int64_t y = (x == 0 ? 1 : 0); y <= height; ++y) {
            if (a[0] * x * x + a[1] * y * y == 0) return std::vector<std::int64_t>{x, y, 0, 0};
          }
        }
        continue;
      }
      auto it = left.find(v);
      if (it != left.end()) return std::vector<std::int64_t>{it->second.first, it->second.second, z, w};
    }
  }
  return std::nullopt;
}

/// Escalating search up to max_height.
inline std::optional<std::vector<std::int64_t>> small_witness(const std::vector<std::int64_t>& a,
                                                              std::int64_t max_height) {
  for (std::int64_t h = 8;; h *= 4) {
    const std::int64_t cap = std::min(h, max_height);
    if (a.size() == 4 && cap > 512) return std::nullopt;
    if (auto w = integer_witness(a, cap)) return w;
    if (cap == max_height) return std::nullopt;
  }
}

/// Entry c * prod v_k^{e_k} of a form over F_p((v_0))...((v_{n-1})).
struct MonomialEntry {
  std::int64_t coeff;
  std::vector<int> exps;
};

/// Exact zero of sum c_i m_i x_i^2 with x_i = kappa_i * prod v_k^{f_ik},
/// kappa_i in F_p and f_ik in {0, 1}, not all kappa_i zero.
inline std::optional<std::vector<std::pair<std::int64_t, std::vector<int>>>> monomial_zero_search(
    std::uint64_t p, const std::vector<MonomialEntry>& entries) {
  const std::size_t n = entries.size();
  if (n == 0) return std::nullopt;
  const std::size_t vars = entries[0].exps.size();
  const std::size_t shapes = std::size_t{1} << vars;
  using Value = std::map<std::vector<int>, std::int64_t>;
  using Choice = std::pair<std::int64_t, std::vector<int>>;
  const auto pm = static_cast<std::int64_t>(p);

  const auto term = [&](std::size_t i, std::int64_t kappa, std::size_t shape, Value& acc) {
    if (kappa == 0) return;
    std::vector<int> e = entries[i].exps;
    for (std::size_t k = 0; k < vars; ++k) e[k] += 2 * static_cast<int>((shape >> k) & 1U);
    std::int64_t& slot = acc[e];
    slot = ((slot + entries[i].coeff % pm * kappa % pm * kappa) % pm + pm) % pm;
    if (slot == 0) acc.erase(e);
  };
  // Per coordinate: kappa in 0..p-1 and a shape, with kappa = 0 taken once.
  const std::size_t per = 1 + (p - 1) * shapes;
  const auto choice = [&](std::size_t code) -> Choice {
    if (code == 0) return {0, std::vector<int>(vars, 0)};
    const std::size_t c = code - 1;
    std::vector<int> f(vars);
    for (std::size_t k = 0; k < vars; ++k) f[k] = static_cast<int>(((c % shapes) >> k) & 1U);
    return {static_cast<std::int64_t>(1 + c / shapes), f};
  };
  const auto sweep = [&](std::size_t lo, std::size_t hi) {
    std::map<Value, std::pair<bool, std::vector<std::size_t>>> out;  // value -> (has nonzero, codes)
    std::vector<std::size_t> codes(hi - lo, 0);
    while (true) {
      Value v;
      bool nonzero = false;
      for (std::size_t i = 0; i < codes.size(); ++i) {
        if (codes[i] == 0) continue;
        nonzero = true;
        const std::size_t c = codes[i] - 1;
        term(lo + i, static_cast<std::int64_t>(1 + c / shapes), c % shapes, v);
      }
      auto& slot = out[v];
      if (nonzero && !slot.first) slot = {true, codes};
      if (!nonzero && slot.second.empty()) slot.second = codes;
      std::size_t pos = 0;
      while (pos < codes.size() && ++codes[pos] == per) codes[pos++] = 0;
      if (pos == codes.size()) break;
    }
    return out;
  };
  const std::size_t mid = n / 2;
  const auto a = sweep(0, mid);
  const auto b = sweep(mid, n);
  for (const auto& [va, ia] : a) {
    Value neg;
    for (const auto& [e, c] : va) neg[e] = (pm - c) % pm;
    auto it = b.find(neg);
    if (it == b.end()) continue;
    if (!ia.first && !it->second.first) continue;
    std::vector<std::pair<std::int64_t, std::vector<int>>> out;
    for (auto code : ia.second) out.push_back(choice(code));
    for (auto code : it->second.second) out.push_back(choice(code));
    // an all-zero half was recorded with an empty code list only when mid == 0
    if (out.size() < n) out.resize(n, {0, std::vector<int>(vars, 0)});
    bool any = false;
    for (const auto& c : out) any = any || c.first != 0;
    if (any) return out;
  }
  return std::nullopt;
}

/// Trace form of F_p[x]/(prod (x - r_i)) read off the CRT decomposition:
/// Tr(x^k) = sum_i r_i^k.
inline std::vector<std::vector<std::int64_t>> split_trace_gram(std::uint64_t p, const std::vector<std::int64_t>& roots) {
  const std::size_t n = roots.size();
  const auto pm = static_cast<std::int64_t>(p);
  std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (auto r : roots) {
        std::int64_t v = 1;
        for (std::size_t k = 0; k < i + j; ++k) v = v * (r % pm) % pm;
        s = (s + v) % pm;
      }
      g[i][j] = (s + pm) % pm;
    }
  }
  return g;
}

/// Roots of f in F_p by exhaustion; f given by coefficients low to high.
inline std::vector<std::int64_t> roots_mod_p(std::uint64_t p, const std::vector<std::int64_t>& f) {
  std::vector<std::int64_t> out;
  const auto pm = static_cast<std::int64_t>(p);
  for (std::int64_t x = 0; x < pm; ++x) {
    std::int64_t v = 0;
    for (std::size_t k = f.size(); k-- > 0;) v = ((v * x + f[k]) % pm + pm) % pm;
    if (v == 0) out.push_back(x);
  }
  return out;
}

/// Quadratic residues of F_p^x by squaring every element.
inline std::set<std::int64_t> squares_mod_p(std::uint64_t p) {
  std::set<std::int64_t> s;
  for (std::uint64_t x = 1; x < p; ++x) s.insert(static_cast<std::int64_t>(x * x % p));
  return s;
}

}  // namespace wittforge::oracle
