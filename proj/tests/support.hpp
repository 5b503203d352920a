#pragma once

#include <string>
#include <vector>

#include "wittforge/dsl.hpp"
#include "wittforge/fields.hpp"
#include "wittforge/form.hpp"

namespace wittforge::test {

inline FieldRef field(const std::string& d) { return dsl::parse_field(d); }
inline SquareClass cls(const FieldRef& k, const std::string& m) { return dsl::parse_class(k, m); }
inline DiagonalForm form(const FieldRef& k, const std::string& f) { return dsl::parse_form(k, f); }
inline std::vector<SquareClass> slots(const FieldRef& k, const std::string& s) { return dsl::parse_slots(k, s); }

/// Every multiset of `dim` classes drawn from `pool`, as sorted index tuples.
inline std::vector<std::vector<SquareClass>> multisets(const std::vector<SquareClass>& pool, std::size_t dim) {
  std::vector<std::vector<SquareClass>> out;
  std::vector<std::size_t> idx(dim, 0);
  if (dim == 0) return {{}};
  while (true) {
    std::vector<SquareClass> e;
    for (auto i : idx) e.push_back(pool[i]);
    out.push_back(std::move(e));
    std::size_t pos = dim;
    while (pos > 0 && idx[pos - 1] == pool.size() - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < dim; ++j) idx[j] = idx[pos - 1];
  }
  return out;
}

}  // namespace wittforge::test
