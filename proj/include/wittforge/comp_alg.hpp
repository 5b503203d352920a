#pragma once

// Cayley-Dickson algebras by structure constants. Doubling convention:
//   (x, y)(z, w) = (xz + c w* y, w x + y z*),   (x, y)* = (x*, -y),
// so the new basis vector u = (0, 1) satisfies u^2 = c and the norm of the
// double is <1, -c> (x) N_A. Basis index bit k records the k-th doubling.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/form.hpp"
#include "wittforge/qform.hpp"
#include "wittforge/scalar.hpp"

namespace wittforge {

/// e_i e_j = coeff * e_index
struct BasisProduct {
  std::size_t index;
  LaurentPoly coeff;
};

class CompositionAlgebra;
using AlgebraRef = std::shared_ptr<const CompositionAlgebra>;

class CompositionAlgebra {
 public:
  /// The one-dimensional algebra k.
  static AlgebraRef ground(const FieldRef& field) {
    auto a = std::shared_ptr<CompositionAlgebra>(new CompositionAlgebra(field));
    a->dim_ = 1;
    a->table_.push_back({0, LaurentPoly::one(field)});
    a->basis_norms_.push_back(LaurentPoly::one(field));
    a->norm_ = DiagonalForm::pfister(field, {});
    return a;
  }

  static AlgebraRef cayley_dickson(const AlgebraRef& base, const SquareClass& c) {
    require_same_field(base->field_, c.field());
    if (base->dim_ >= 16) throw Error(ErrorCode::DimTooLarge, "doubling beyond dimension 16 is not supported");
    const FieldRef& k = base->field_;
    const std::size_t n = base->dim_;
    const LaurentPoly cval = LaurentPoly::representative(c);

    auto a = std::shared_ptr<CompositionAlgebra>(new CompositionAlgebra(k));
    a->dim_ = 2 * n;
    a->slots_ = base->slots_;
    a->slots_.push_back(c);
    a->slot_values_ = base->slot_values_;
    a->slot_values_.push_back(cval);
    a->table_.resize(a->dim_ * a->dim_, {0, LaurentPoly(k)});
    const auto conj_sign = [&](std::size_t j) { return j == 0 ? LaurentPoly::one(k) : -LaurentPoly::one(k); };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const BasisProduct& ij = base->product(i, j);
        const BasisProduct& ji = base->product(j, i);
        // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
        a->table_[i * a->dim_ + j] = ij;
        // (e_i, 0)(0, e_j) = (0, e_j e_i)
        a->table_[i * a->dim_ + (n + j)] = {n + ji.index, ji.coeff};
        // (0, e_i)(e_j, 0) = (0, e_i e_j*)
        a->table_[(n + i) * a->dim_ + j] = {n + ij.index, ij.coeff * conj_sign(j)};
        // (0, e_i)(0, e_j) = (c e_j* e_i, 0)
        a->table_[(n + i) * a->dim_ + (n + j)] = {ji.index, ji.coeff * conj_sign(j) * cval};
      }
    }
    a->basis_norms_ = base->basis_norms_;
    for (std::size_t i = 0; i < n; ++i) a->basis_norms_.push_back(-(cval * base->basis_norms_[i]));
    a->norm_ = DiagonalForm::pfister(k, a->slots_);
    return a;
  }

  /// Basis 1, i, j, ij with i^2 = a, j^2 = b, ij = -ji.
  static AlgebraRef quaternion(const FieldRef& field, const SquareClass& a, const SquareClass& b) {
    return cayley_dickson(cayley_dickson(ground(field), a), b);
  }

  static AlgebraRef from_slots(const FieldRef& field, const std::vector<SquareClass>& slots) {
    AlgebraRef a = ground(field);
    for (const auto& s : slots) a = cayley_dickson(a, s);
    return a;
  }

  const FieldRef& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<SquareClass>& slots() const { return slots_; }
  const std::vector<LaurentPoly>& slot_values() const { return slot_values_; }
  const DiagonalForm& norm_form() const { return norm_; }
  /// n(e_i) as actual scalars (the norm form is diagonal in this basis).
  const std::vector<LaurentPoly>& basis_norms() const { return basis_norms_; }
  const BasisProduct& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

  std::string slots_string() const {
    std::string s;
    for (std::size_t i = 0; i < slots_.size(); ++i) s += (i ? "," : "") + slots_[i].to_string();
    return s;
  }

 private:
  explicit CompositionAlgebra(FieldRef field) : field_(std::move(field)), norm_(field_) {}

  FieldRef field_;
  std::size_t dim_ = 0;
  std::vector<SquareClass> slots_;
  std::vector<LaurentPoly> slot_values_;
  std::vector<BasisProduct> table_;
  std::vector<LaurentPoly> basis_norms_;
  DiagonalForm norm_;
};

inline AlgebraRef quaternion(const FieldRef& field, const SquareClass& a, const SquareClass& b) {
  return CompositionAlgebra::quaternion(field, a, b);
}

inline AlgebraRef cayley_dickson(const AlgebraRef& base, const SquareClass& c) {
  return CompositionAlgebra::cayley_dickson(base, c);
}

class AlgebraElement {
 public:
  AlgebraElement(AlgebraRef alg, std::vector<LaurentPoly> coords) : alg_(std::move(alg)), coords_(std::move(coords)) {
    if (coords_.size() != alg_->dim()) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(alg_->dim()) + " coordinates, got " +
                                                    std::to_string(coords_.size()));
    }
    for (const auto& c : coords_) require_same_field(alg_->field(), c.field());
  }

  static AlgebraElement zero(const AlgebraRef& alg) {
    return AlgebraElement(alg, std::vector<LaurentPoly>(alg->dim(), LaurentPoly::zero(alg->field())));
  }
  static AlgebraElement basis(const AlgebraRef& alg, std::size_t i) {
    AlgebraElement e = zero(alg);
    e.coords_.at(i) = LaurentPoly::one(alg->field());
    return e;
  }
  static AlgebraElement scalar(const AlgebraRef& alg, const LaurentPoly& s) {
    AlgebraElement e = zero(alg);
    e.coords_[0] = s;
    return e;
  }

  const AlgebraRef& algebra() const { return alg_; }
  const std::vector<LaurentPoly>& coords() const { return coords_; }
  const LaurentPoly& operator[](std::size_t i) const { return coords_[i]; }

  bool is_scalar() const {
    for (std::size_t i = 1; i < coords_.size(); ++i) {
      if (!coords_[i].is_zero()) return false;
    }
    return true;
  }
  bool is_zero() const { return is_scalar() && coords_[0].is_zero(); }

  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    check(x, y);
    AlgebraElement r = x;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += y.coords_[i];
    return r;
  }
  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    check(x, y);
    AlgebraElement r = x;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] -= y.coords_[i];
    return r;
  }
  friend AlgebraElement operator*(const LaurentPoly& s, const AlgebraElement& x) {
    AlgebraElement r = x;
    for (auto& c : r.coords_) c = s * c;
    return r;
  }
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    check(x, y);
    const CompositionAlgebra& a = *x.alg_;
    AlgebraElement r = zero(x.alg_);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (x.coords_[i].is_zero()) continue;
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (y.coords_[j].is_zero()) continue;
        const BasisProduct& p = a.product(i, j);
        r.coords_[p.index] += p.coeff * x.coords_[i] * y.coords_[j];
      }
    }
    return r;
  }
  friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
    return x.alg_ == y.alg_ && x.coords_ == y.coords_;
  }
  friend bool operator!=(const AlgebraElement& x, const AlgebraElement& y) { return !(x == y); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ", " : "") + coords_[i].to_string();
    return s + ")";
  }

 private:
  static void check(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.alg_ != y.alg_) throw Error(ErrorCode::AlgebraMismatch, "elements of different algebras");
  }

  AlgebraRef alg_;
  std::vector<LaurentPoly> coords_;
};

inline AlgebraElement conj(const AlgebraElement& x) {
  std::vector<LaurentPoly> c = x.coords();
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = -c[i];
  return AlgebraElement(x.algebra(), std::move(c));
}

/// N(x) = x x*, which always lies in the scalar span.
inline LaurentPoly norm(const AlgebraElement& x) {
  const AlgebraElement n = x * conj(x);
  if (!n.is_scalar()) throw Error(ErrorCode::PreconditionFailed, "x x* is not a scalar");
  return n[0];
}

inline LaurentPoly trace(const AlgebraElement& x) {
  const AlgebraElement t = x + conj(x);
  if (!t.is_scalar()) throw Error(ErrorCode::PreconditionFailed, "x + x* is not a scalar");
  return t[0];
}

/// Value of the diagonal norm form at the coordinates of x.
inline LaurentPoly norm_form_value(const AlgebraElement& x) {
  LaurentPoly v = LaurentPoly::zero(x.algebra()->field());
  for (std::size_t i = 0; i < x.coords().size(); ++i) v += x.algebra()->basis_norms()[i] * x[i] * x[i];
  return v;
}

inline bool is_split(const CompositionAlgebra& a) {
  if (a.dim() != 2 && a.dim() != 4 && a.dim() != 8) {
    throw Error(ErrorCode::UnsupportedDim, "splitting is defined for dimensions 2, 4 and 8, not " +
                                               std::to_string(a.dim()));
  }
  return is_isotropic(a.norm_form());
}

/// N(xy) - N(x) N(y).
inline LaurentPoly composition_defect(const CompositionAlgebra& a, const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra().get() != &a || y.algebra().get() != &a) {
    throw Error(ErrorCode::AlgebraMismatch, "elements do not belong to the algebra");
  }
  return norm(x * y) - norm(x) * norm(y);
}

}  // namespace wittforge
