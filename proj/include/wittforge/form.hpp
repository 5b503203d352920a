#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittforge/error.hpp"
#include "wittforge/fields.hpp"

namespace wittforge {

/// Nondegenerate diagonal quadratic form <a_1, ..., a_n> with entries taken
/// as square classes. Pfister forms remember their slots.
class DiagonalForm {
 public:
  explicit DiagonalForm(FieldRef field) : field_(std::move(field)) {}
  DiagonalForm(FieldRef field, std::vector<SquareClass> entries)
      : field_(std::move(field)), entries_(std::move(entries)) {
    for (const auto& e : entries_) require_same_field(field_, e.field());
  }

  /// <<a_1, ..., a_n>> = <1, -a_1> (x) ... (x) <1, -a_n>; entry i is the
  /// product of -a_k over the set bits k of i.
  static DiagonalForm pfister(const FieldRef& field, std::vector<SquareClass> slots) {
    for (const auto& s : slots) require_same_field(field, s.field());
    if (slots.size() > 16) throw Error(ErrorCode::DimTooLarge, "too many Pfister slots");
    std::vector<SquareClass> entries(std::size_t{1} << slots.size(), SquareClass(field));
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const SquareClass neg = -slots[k];
      const std::size_t half = std::size_t{1} << k;
      for (std::size_t i = 0; i < half; ++i) entries[half + i] = entries[i] * neg;
    }
    DiagonalForm f(field, std::move(entries));
    f.slots_ = std::move(slots);
    return f;
  }

  const FieldRef& field() const { return field_; }
  const std::vector<SquareClass>& entries() const { return entries_; }
  std::size_t dim() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::optional<std::vector<SquareClass>>& pfister_slots() const { return slots_; }
  bool is_pfister() const { return slots_.has_value(); }

  /// Same entries up to order.
  bool same_entries(const DiagonalForm& other) const {
    if (!same_field(field_, other.field_) || dim() != other.dim()) return false;
    auto a = entries_;
    auto b = other.entries_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  friend bool operator==(const DiagonalForm& a, const DiagonalForm& b) {
    return same_field(a.field_, b.field_) && a.entries_ == b.entries_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ",";
      s += entries_[i].to_string();
    }
    return s + "]";
  }

  std::string slots_string() const {
    if (!slots_) return to_string();
    std::string s = "<<";
    for (std::size_t i = 0; i < slots_->size(); ++i) {
      if (i) s += ",";
      s += (*slots_)[i].to_string();
    }
    return s + ">>";
  }

 private:
  friend DiagonalForm tensor(const DiagonalForm&, const DiagonalForm&);

  FieldRef field_;
  std::vector<SquareClass> entries_;
  std::optional<std::vector<SquareClass>> slots_;
};

inline DiagonalForm orthogonal_sum(const DiagonalForm& f, const DiagonalForm& g) {
  require_same_field(f.field(), g.field());
  auto entries = f.entries();
  entries.insert(entries.end(), g.entries().begin(), g.entries().end());
  return DiagonalForm(f.field(), std::move(entries));
}

/// Entry i + j*dim(f) is f_i * g_j, so <1,-a> (x) <1,-b> = <1,-a,-b,ab>.
inline DiagonalForm tensor(const DiagonalForm& f, const DiagonalForm& g) {
  require_same_field(f.field(), g.field());
  std::vector<SquareClass> entries;
  entries.reserve(f.dim() * g.dim());
  for (const auto& y : g.entries()) {
    for (const auto& x : f.entries()) entries.push_back(x * y);
  }
  DiagonalForm r(f.field(), std::move(entries));
  if (f.slots_ && g.slots_) {
    auto slots = *f.slots_;
    slots.insert(slots.end(), g.slots_->begin(), g.slots_->end());
    r.slots_ = std::move(slots);
  }
  return r;
}

inline DiagonalForm scale(const SquareClass& a, const DiagonalForm& f) {
  require_same_field(a.field(), f.field());
  if (a.is_one()) return f;
  std::vector<SquareClass> entries;
  entries.reserve(f.dim());
  for (const auto& x : f.entries()) entries.push_back(a * x);
  return DiagonalForm(f.field(), std::move(entries));
}

/// Scaling by a base constant, which must be nonzero.
inline DiagonalForm scale(const BigRational& a, const DiagonalForm& f) {
  if (a == 0) throw Error(ErrorCode::ZeroScale, "scale factor is zero");
  return scale(constant_square_class(f.field(), a), f);
}

inline DiagonalForm negate(const DiagonalForm& f) { return scale(SquareClass::minus_one(f.field()), f); }

enum class CombineOp { OrthogonalSum, Tensor };

inline DiagonalForm combine(CombineOp op, const DiagonalForm& f, const DiagonalForm& g) {
  return op == CombineOp::OrthogonalSum ? orthogonal_sum(f, g) : tensor(f, g);
}

inline DiagonalForm pfister(const FieldRef& field, std::vector<SquareClass> slots) {
  return DiagonalForm::pfister(field, std::move(slots));
}

/// The complement of the leading <1> in a Pfister form.
inline DiagonalForm pure_part(const DiagonalForm& phi) {
  if (!phi.is_pfister()) throw Error(ErrorCode::NotPfister, phi.to_string() + " carries no Pfister slots");
  return DiagonalForm(phi.field(), std::vector<SquareClass>(phi.entries().begin() + 1, phi.entries().end()));
}

}  // namespace wittforge
