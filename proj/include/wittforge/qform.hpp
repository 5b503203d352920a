#pragma once

// Isotropy, Witt decomposition and isometry of diagonal forms, dispatched on
// the tower: finite and real bases are classified directly, Q goes through
// Hasse-Minkowski, and Laurent towers use Springer's theorem on the outermost
// variable (q = q_1 + t q_2 is isotropic iff q_1 or q_2 is, and Witt indices
// add).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/arith_q.hpp"
#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/form.hpp"
#include "wittforge/scalar.hpp"

namespace wittforge {

struct WittDecomposition {
  std::size_t witt_index = 0;
  std::size_t kernel_dim = 0;
  /// Explicit anisotropic kernel. Absent only when Q-base planes were
  /// stripped by invariants, in which case kernel_invariants describe it.
  std::optional<DiagonalForm> kernel;
  std::optional<RationalInvariants> kernel_invariants;

  bool is_hyperbolic() const { return kernel_dim == 0; }
};

struct ResidueForms {
  DiagonalForm first;   // unit entries
  DiagonalForm second;  // entries divisible by the outer variable, divided by it
};

/// First and second residue forms with respect to the outermost variable.
inline ResidueForms residue_forms(const DiagonalForm& f) {
  const FieldRef& res = f.field()->residue_field();
  if (!res) throw Error(ErrorCode::NotLaurent, f.field()->descriptor() + " has no Laurent variable");
  std::vector<SquareClass> first;
  std::vector<SquareClass> second;
  for (const auto& a : f.entries()) {
    auto [parity, unit] = residue_split(f.field(), a);
    (parity ? second : first).push_back(std::move(unit));
  }
  return {DiagonalForm(res, std::move(first)), DiagonalForm(res, std::move(second))};
}

inline bool is_isotropic(const DiagonalForm& f) {
  const FieldTower& k = *f.field();
  if (k.is_laurent()) {
    auto [first, second] = residue_forms(f);
    return is_isotropic(first) || is_isotropic(second);
  }
  switch (k.base()) {
    case BaseKind::Real: {
      bool pos = false;
      bool neg = false;
      for (const auto& a : f.entries()) (a.base_bit() ? neg : pos) = true;
      return pos && neg;
    }
    case BaseKind::Finite:
      if (f.dim() >= 3) return true;
      if (f.dim() == 2) return (-(f.entries()[0] * f.entries()[1])).is_one();
      return false;
    case BaseKind::Rationals:
      return f.dim() >= 2 && global_isotropy(f);
  }
  return false;
}

namespace detail {

inline SquareClass discriminant(const DiagonalForm& f) {
  SquareClass d(f.field());
  for (const auto& a : f.entries()) d = d * a;
  return d;
}

inline WittDecomposition witt_finite(const DiagonalForm& f) {
  const FieldRef& k = f.field();
  const std::size_t n = f.dim();
  WittDecomposition w;
  SquareClass signed_disc = discriminant(f);
  if ((n / 2) % 2 == 1) signed_disc = -signed_disc;
  if (n % 2 == 1) {
    w.witt_index = n / 2;
    w.kernel = DiagonalForm(k, {signed_disc});
  } else if (signed_disc.is_one()) {
    w.witt_index = n / 2;
    w.kernel = DiagonalForm(k);
  } else {
    w.witt_index = n / 2 - 1;
    w.kernel = DiagonalForm(k, {SquareClass(k), -signed_disc});
  }
  w.kernel_dim = w.kernel->dim();
  return w;
}

inline WittDecomposition witt_real(const DiagonalForm& f) {
  const FieldRef& k = f.field();
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (const auto& a : f.entries()) (a.base_bit() ? neg : pos) += 1;
  WittDecomposition w;
  w.witt_index = std::min(pos, neg);
  const SquareClass sign = pos > neg ? SquareClass(k) : SquareClass::minus_one(k);
  w.kernel = DiagonalForm(k, std::vector<SquareClass>(pos > neg ? pos - neg : neg - pos, sign));
  w.kernel_dim = w.kernel->dim();
  return w;
}

inline WittDecomposition witt_rational(const DiagonalForm& f) {
  RationalWitt r = witt_index_rational(f);
  WittDecomposition w;
  w.witt_index = r.witt_index;
  w.kernel_dim = r.kernel.dim;
  w.kernel_invariants = r.kernel;
  if (r.witt_index == 0) {
    w.kernel = f;
  } else if (r.kernel.dim == 0) {
    w.kernel = DiagonalForm(f.field());
  }
  return w;
}

}  // namespace detail

inline WittDecomposition witt_decompose(const DiagonalForm& f) {
  const FieldRef& k = f.field();
  if (k->is_laurent()) {
    auto [first, second] = residue_forms(f);
    const WittDecomposition w1 = witt_decompose(first);
    const WittDecomposition w2 = witt_decompose(second);
    WittDecomposition w;
    w.witt_index = w1.witt_index + w2.witt_index;
    w.kernel_dim = w1.kernel_dim + w2.kernel_dim;
    if (w1.kernel && w2.kernel) {
      std::vector<SquareClass> entries;
      for (const auto& a : w1.kernel->entries()) entries.push_back(lift_residue(k, a, 0));
      for (const auto& a : w2.kernel->entries()) entries.push_back(lift_residue(k, a, 1));
      w.kernel = DiagonalForm(k, std::move(entries));
    }
    return w;
  }
  switch (k->base()) {
    case BaseKind::Finite: return detail::witt_finite(f);
    case BaseKind::Real: return detail::witt_real(f);
    case BaseKind::Rationals: return detail::witt_rational(f);
  }
  throw Error(ErrorCode::UnsupportedField, k->descriptor());
}

inline bool is_hyperbolic(const DiagonalForm& f) { return witt_decompose(f).is_hyperbolic(); }

inline bool is_isometric(const DiagonalForm& f, const DiagonalForm& g) {
  require_same_field(f.field(), g.field());
  if (f.dim() != g.dim()) return false;
  const FieldTower& k = *f.field();
  if (k.base() == BaseKind::Rationals && !k.is_laurent()) return rational_invariants(f) == rational_invariants(g);
  return is_hyperbolic(orthogonal_sum(f, negate(g)));
}

/// Whether the Pfister form phi becomes hyperbolic over k(sqrt(delta)),
/// decided in k as isotropy of pure(phi) + <delta>.
inline bool splits_over_quadratic(const DiagonalForm& phi, const SquareClass& delta) {
  require_same_field(phi.field(), delta.field());
  if (delta.is_one()) throw Error(ErrorCode::DeltaIsSquare, "delta = " + delta.to_string() + " is a square");
  return is_isotropic(orthogonal_sum(pure_part(phi), DiagonalForm(phi.field(), {delta})));
}

/// Hyperbolicity of phi after base change along a modelled quadratic extension.
inline bool hyperbolic_over_extension(const DiagonalForm& phi, const QuadraticExtension& ext) {
  require_same_field(phi.field(), ext.base);
  std::vector<SquareClass> entries;
  entries.reserve(phi.dim());
  for (const auto& a : phi.entries()) entries.push_back(ext.transfer(a));
  return is_hyperbolic(DiagonalForm(ext.extended, std::move(entries)));
}

/// Slots (delta, b_2, ..., b_n) with <<delta, b_2, ..., b_n>> isometric to
/// phi, if any exist. Exchanging delta for one of phi's own slots is tried
/// first, then every tuple of square classes.
inline std::optional<std::vector<SquareClass>> find_pfister_slot_witness(const DiagonalForm& phi,
                                                                         const SquareClass& delta) {
  require_same_field(phi.field(), delta.field());
  if (!phi.is_pfister()) throw Error(ErrorCode::NotPfister, phi.to_string() + " carries no Pfister slots");
  const FieldRef& k = phi.field();
  if (!k->finite_square_classes()) {
    throw Error(ErrorCode::WitnessUnsupported, "slot witnesses need a finite square-class group");
  }
  const auto& slots = *phi.pfister_slots();
  const std::size_t n = slots.size();
  if (n == 0) return std::nullopt;

  const auto matches = [&](const std::vector<SquareClass>& cand) {
    return is_isometric(DiagonalForm::pfister(k, cand), phi);
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<SquareClass> cand{delta};
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) cand.push_back(slots[j]);
    }
    if (matches(cand)) return cand;
  }
  const auto classes = enumerate_square_classes(k);
  std::vector<std::size_t> idx(n - 1, 0);
  while (true) {
    std::vector<SquareClass> cand{delta};
    for (auto i : idx) cand.push_back(classes[i]);
    if (matches(cand)) return cand;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == classes.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return std::nullopt;
}

inline std::vector<SquareClass> pfister_slot_witness(const DiagonalForm& phi, const SquareClass& delta) {
  if (phi.field()->base() == BaseKind::Rationals) {
    throw Error(ErrorCode::WitnessUnsupported, "over Q only the splitting decision is available");
  }
  if (!splits_over_quadratic(phi, delta)) {
    throw Error(ErrorCode::NoSplit, phi.slots_string() + " does not split over the quadratic extension by " +
                                        delta.to_string());
  }
  auto w = find_pfister_slot_witness(phi, delta);
  if (!w) throw Error(ErrorCode::NoSplit, "no slot witness found");
  return *w;
}

template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// Symmetric Gaussian reduction over the fraction field. A zero pivot is
/// repaired by swapping in a later nonzero diagonal entry, or else by adding
/// a later basis vector with nonzero cross term (char != 2).
inline DiagonalForm diagonalize(const FieldRef& field, Matrix<RationalFunction> a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::NotSymmetric, "Gram matrix is not square");
    for (const auto& x : a[i]) require_same_field(field, x.num().field());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(a[i][j] == a[j][i])) throw Error(ErrorCode::NotSymmetric, "Gram matrix is not symmetric");
    }
  }
  std::vector<SquareClass> diag;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_with = n;
      for (std::size_t j = k + 1; j < n && swap_with == n; ++j) {
        if (!a[j][j].is_zero()) swap_with = j;
      }
      if (swap_with != n) {
        std::swap(a[k], a[swap_with]);
        for (auto& row : a) std::swap(row[k], row[swap_with]);
      } else {
        std::size_t partner = n;
        for (std::size_t j = k + 1; j < n && partner == n; ++j) {
          if (!a[k][j].is_zero()) partner = j;
        }
        if (partner == n) throw Error(ErrorCode::Degenerate, "Gram matrix is singular");
        for (std::size_t j = k; j < n; ++j) a[k][j] = a[k][j] + a[partner][j];
        for (std::size_t i = k; i < n; ++i) a[i][k] = a[i][k] + a[i][partner];
      }
    }
    const RationalFunction pivot = a[k][k];
    const RationalFunction inv = pivot.inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const RationalFunction factor = a[i][k] * inv;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = a[i][j] - factor * a[k][j];
    }
    diag.push_back(pivot.square_class());
  }
  return DiagonalForm(field, std::move(diag));
}

inline DiagonalForm diagonalize(const FieldRef& field, const Matrix<LaurentPoly>& gram) {
  Matrix<RationalFunction> a;
  a.reserve(gram.size());
  for (const auto& row : gram) {
    std::vector<RationalFunction> r;
    r.reserve(row.size());
    for (const auto& x : row) r.emplace_back(x);
    a.push_back(std::move(r));
  }
  return diagonalize(field, std::move(a));
}

}  // namespace wittforge
