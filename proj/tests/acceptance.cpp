// Acceptance suite: one line per criterion, exit status 1 if any fails.
// Every check is exact; the time limits are wall-clock per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"
#include "wittforge/g2_tori.hpp"
#include "wittforge/oracle.hpp"

using namespace wittforge;
using wittforge::test::cls;
using wittforge::test::field;
using wittforge::test::form;
using wittforge::test::multisets;
using wittforge::test::slots;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> body;
};

// Ordered tuples of length n over the pool.
std::vector<std::vector<SquareClass>> tuples(const std::vector<SquareClass>& pool, std::size_t n) {
  std::vector<std::vector<SquareClass>> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<SquareClass> t;
    for (auto i : idx) t.push_back(pool[i]);
    out.push_back(std::move(t));
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == pool.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  return out;
}

std::vector<AlgebraRef> desk_octonions(const FieldRef& k) {
  std::vector<AlgebraRef> out;
  for (const auto& s : multisets(enumerate_square_classes(k), 3)) out.push_back(CompositionAlgebra::from_slots(k, s));
  return out;
}

LaurentPoly random_poly(const FieldRef& k, std::mt19937_64& rng) {
  LaurentPoly p = LaurentPoly::zero(k);
  const int terms = static_cast<int>(rng() % 3);
  for (int i = 0; i <= terms; ++i) {
    Monomial m;
    m.constant = static_cast<std::int64_t>(rng() % 19) - 9;
    for (const auto& v : k->vars()) m.powers.emplace_back(v, static_cast<int>(rng() % 5) - 2);
    if (m.constant != 0) p += LaurentPoly::from_monomial(k, m);
  }
  return p;
}

AlgebraElement random_element(const AlgebraRef& a, std::mt19937_64& rng) {
  std::vector<LaurentPoly> c;
  for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(random_poly(a->field(), rng));
  return AlgebraElement(a, c);
}

Outcome pure_part_suite() {
  Outcome o;
  std::size_t checked = 0;
  std::size_t extension_checks = 0;
  for (const char* d : {"F5((t))", "F13((s))((t))", "R((t))((s))"}) {
    auto k = field(d);
    const auto pool = enumerate_square_classes(k);
    for (std::size_t n = 2; n <= 3; ++n) {
      for (const auto& s : tuples(pool, n)) {
        const auto phi = pfister(k, s);
        for (const auto& delta : pool) {
          if (delta.is_one()) continue;
          const bool split = splits_over_quadratic(phi, delta);
          o.check(split == find_pfister_slot_witness(phi, delta).has_value(),
                  std::string(d) + " witness mismatch at " + phi.slots_string() + " delta " + delta.to_string());
          std::optional<QuadraticExtension> ext;
          try {
            ext = extend_quadratic(k, delta);
          } catch (const Error& e) {
            o.check(e.code() == ErrorCode::UnsupportedDelta, "unexpected extension error");
          }
          if (ext) {
            ++extension_checks;
            o.check(split == hyperbolic_over_extension(phi, *ext),
                    std::string(d) + " extension mismatch at " + phi.slots_string() + " delta " + delta.to_string());
          }
          ++checked;
        }
      }
    }
  }
  if (o.ok) {
    o.detail = std::to_string(checked) + " (phi, delta) pairs, " + std::to_string(extension_checks) +
               " through explicit extensions";
  }
  return o;
}

Outcome springer_suite() {
  Outcome o;
  auto k = field("F5((t))");
  const auto pool = enumerate_square_classes(k);
  std::size_t count = 0;
  for (std::size_t dim = 1; dim <= 4; ++dim) {
    for (const auto& e : multisets(pool, dim)) {
      const DiagonalForm f(k, e);
      std::vector<std::pair<std::int64_t, int>> entries;
      for (const auto& a : e) entries.emplace_back(a.base_bit() ? 2 : 1, a.exponent(0));
      o.check(is_isotropic(f) == oracle::laurent_isotropic(5, entries, 4), "mismatch at " + f.to_string());
      ++count;
    }
  }
  if (o.ok) o.detail = std::to_string(count) + " forms, primitive zeros modulo t^4";
  return o;
}

Outcome local_global_suite() {
  Outcome o;
  for (std::int64_t a = -30; a <= 30; ++a) {
    for (std::int64_t b = -30; b <= 30; ++b) {
      if (!a || !b) continue;
      const auto ca = rational_class(BigRational(a));
      const auto cb = rational_class(BigRational(b));
      int prod = 1;
      for (const auto& v : finite_support({ca, cb})) prod *= hilbert_symbol(ca, cb, v);
      o.check(prod == 1, "product formula fails for " + std::to_string(a) + "," + std::to_string(b));
    }
  }
  std::mt19937_64 rng(20261016);
  std::size_t isotropic = 0;
  std::size_t anisotropic = 0;
  const auto q = FieldTower::rationals();
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t dim = 1 + rng() % 4;
    std::vector<std::int64_t> a;
    std::vector<SquareClass> e;
    for (std::size_t i = 0; i < dim; ++i) {
      std::int64_t x = 0;
      while (x == 0) x = static_cast<std::int64_t>(rng() % 101) - 50;
      a.push_back(x);
      e.push_back(rational_class(BigRational(x)));
    }
    const DiagonalForm f(q, e);
    if (global_isotropy(f)) {
      ++isotropic;
      o.check(oracle::small_witness(a, 10000).has_value(), "no witness for isotropic " + f.to_string());
    } else {
      ++anisotropic;
      const auto place = local_obstruction(f);
      o.check(place.has_value(), "no failing place for " + f.to_string());
      if (place) {
        o.check(!oracle::local_isotropic(a, place->prime),
                "named place " + place->to_string() + " is not obstructing for " + f.to_string());
      }
    }
  }
  if (o.ok) {
    o.detail = "product formula on all pairs in +-1..+-30; " + std::to_string(isotropic) + " isotropic and " +
               std::to_string(anisotropic) + " anisotropic sampled forms";
  }
  return o;
}

Outcome theorem_replay() {
  Outcome o;
  auto k = field("F13((s))((t))");
  const auto c = cayley_dickson(quaternion(k, cls(k, "u"), cls(k, "s")), cls(k, "t"));
  o.check(!is_split(*c), "C is split");
  o.check(is_isometric(c->norm_form(), pfister(k, slots(k, "t,u,s"))), "norm(C) differs from <<t,u,s>>");
  o.check(splitting_profile(*c).size() == 7, "splitting profile is not all 7 nonsquare classes");
  const MonicPolynomial f{{dsl::parse_poly(k, "-t"), LaurentPoly::zero(k), LaurentPoly::zero(k)}};
  const std::vector<LaurentPoly> one{LaurentPoly::one(k), LaurentPoly::zero(k), LaurentPoly::zero(k)};
  const auto g = trace_form_gram(k, f, one);
  const std::vector<std::vector<std::string>> expected{{"3", "0", "0"}, {"0", "0", "3*t"}, {"0", "3*t", "0"}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) o.check(g[i][j] == dsl::parse_poly(k, expected[i][j]), "trace Gram entry differs");
  }
  o.check(is_isometric(trace_form(k, f, one), form(k, "[1,1,-1]")), "trace form is not <1,1,-1>");
  std::size_t ds = 0;
  for (const auto& d : enumerate_square_classes(k)) {
    if (d.is_one()) continue;
    ++ds;
    o.check(cubic_obstruction_report(*c, d).verdict == "inadmissible", "cubic type admissible at d = " + d.to_string());
  }
  if (o.ok) o.detail = "division, profile 7/7, Gram and <1,1,-1> exact, inadmissible for " + std::to_string(ds) + " d";
  return o;
}

Outcome kernel_dimension() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"F5((t1))((t2))", "u"}, {"F13((t1))((t2))", "u"}, {"F5((s))((t1))((t2))", "u,s"}, {"F13((s))((t1))((t2))", "u,s"}};
  for (const auto& [d, s] : cases) {
    auto k = field(d);
    const auto phi0 = pfister(k, slots(k, s));
    const std::size_t n = phi0.pfister_slots()->size() + 1;
    const auto phi1 = tensor(form(k, "[1,-t1]"), phi0);
    const auto phi2 = tensor(form(k, "[1,-t2]"), phi0);
    o.check(!is_isotropic(phi1) && !is_isotropic(phi2), d + ": phi_i isotropic");
    const auto w = witt_decompose(orthogonal_sum(phi1, negate(phi2)));
    o.check(w.kernel_dim == (std::size_t{1} << n), d + ": kernel dimension " + std::to_string(w.kernel_dim));
  }
  if (o.ok) o.detail = "n = 2 and n = 3 over F5 and F13 bases, kernel dimension 2^n";
  return o;
}

Outcome composition_suite() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t pairs = 0;
  for (const char* d : {"Q", "F13((s))((t))"}) {
    auto k = field(d);
    const auto sl = slots(k, k->num_vars() ? "u,s,t" : "-1,-3,2");
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto a = CompositionAlgebra::from_slots(k, std::vector<SquareClass>(sl.begin(), sl.begin() + n));
      for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_element(a, rng);
        const auto y = random_element(a, rng);
        o.check(composition_defect(*a, x, y).is_zero(), std::string(d) + " composition fails in dim " + std::to_string(a->dim()));
        if (n == 3) {
          o.check((x * x) * y == x * (x * y) && (y * x) * x == y * (x * x), std::string(d) + " not alternative");
        }
        ++pairs;
      }
    }
  }
  auto q = FieldTower::rationals();
  const auto sed = CompositionAlgebra::from_slots(q, slots(q, "-1,-1,-1,-1"));
  std::string witness;
  for (std::size_t i = 1; i < 16 && witness.empty(); ++i) {
    for (std::size_t j = i + 1; j < 16 && witness.empty(); ++j) {
      for (std::size_t a = 1; a < 16 && witness.empty(); ++a) {
        for (std::size_t b = a + 1; b < 16 && witness.empty(); ++b) {
          const auto x = AlgebraElement::basis(sed, i) + AlgebraElement::basis(sed, j);
          const auto y = AlgebraElement::basis(sed, a) - AlgebraElement::basis(sed, b);
          if (!composition_defect(*sed, x, y).is_zero()) {
            witness = "e" + std::to_string(i) + "+e" + std::to_string(j) + ", e" + std::to_string(a) + "-e" +
                      std::to_string(b);
          }
        }
      }
    }
  }
  o.check(!witness.empty(), "no dimension-16 defect found");
  if (o.ok) o.detail = std::to_string(pairs) + " pairs; dim 16 defect at (" + witness + ")";
  return o;
}

Outcome genus_suite() {
  Outcome o;
  const std::vector<std::int64_t> pool{-7, -5, -3, -2, -1, 1, 2, 3, 5, 7};
  std::vector<std::pair<std::int64_t, std::int64_t>> algebras;
  for (auto a : pool) {
    for (auto b : pool) algebras.emplace_back(a, b);
  }
  // ramification by local solvability search; only 2, 3, 5, 7 and infinity can ramify
  std::vector<std::set<unsigned>> ram;
  for (const auto& [a, b] : algebras) {
    std::set<unsigned> r;
    for (auto p : {0U, 2U, 3U, 5U, 7U}) {
      if (oracle::hilbert_symbol(a, b, p) == -1) r.insert(p);
    }
    ram.push_back(r);
  }
  const std::size_t n = algebras.size();
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      eq[i][j] = genus_equal_rational(algebras[i].first, algebras[i].second, algebras[j].first, algebras[j].second);
      o.check(eq[i][j] == (ram[i] == ram[j]), "genus disagrees with ramification for pair " + std::to_string(i) + "," +
                                                   std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    o.check(eq[i][i], "not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      o.check(eq[i][j] == eq[j][i], "not symmetric");
      if (!eq[i][j]) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (eq[j][l]) o.check(eq[i][l], "not transitive");
      }
    }
  }
  o.check(genus_equal_rational(-1, -1, -1, -2), "(-1,-1) vs (-1,-2) should agree");
  o.check(!genus_equal_rational(-1, -1, -1, -3), "(-1,-1) vs (-1,-3) should differ");
  if (o.ok) o.detail = std::to_string(n * n) + " ordered pairs of quaternion algebras";
  return o;
}

Outcome torus_comparison_suite() {
  Outcome o;
  std::size_t octonions = 0;
  for (const char* d : {"F5((t))", "F13((s))((t))"}) {
    auto k = field(d);
    const auto all = desk_octonions(k);
    const auto split_it = std::find_if(all.begin(), all.end(), [](const AlgebraRef& c) { return is_split(*c); });
    if (split_it == all.end()) {
      o.check(false, std::string(d) + ": no split octonion");
      continue;
    }
    for (const auto& c : all) {
      ++octonions;
      const auto self = compare_torus_systems(*c, *c);
      o.check(self.verdict == "equivalent", std::string(d) + " " + c->slots_string() + " not equivalent to itself");
      const std::string text = self.serialize();
      o.check(Report::parse(text).serialize() == text, "self report does not round-trip");
      if (!is_split(*c)) {
        const auto cross = compare_torus_systems(**split_it, *c);
        o.check(cross.verdict == "not equivalent", std::string(d) + " split vs " + c->slots_string() + " equivalent");
        const std::string t2 = cross.serialize();
        o.check(Report::parse(t2).serialize() == t2, "comparison report does not round-trip");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(octonions) + " octonions over F5((t)) and F13((s))((t))";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "pure-part splitting criterion", 60, pure_part_suite},
      {2, "Springer isotropy over F5((t))", 60, springer_suite},
      {3, "local-global principle over Q", 120, local_global_suite},
      {4, "octonion replay over F13((s))((t))", 60, theorem_replay},
      {5, "anisotropic kernel of phi_1 - phi_2", 10, kernel_dimension},
      {6, "composition law", 60, composition_suite},
      {7, "quaternion genus over Q", 60, genus_suite},
      {8, "torus type comparison and JSON", 30, torus_comparison_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    if (o.ok && !in_time) o.detail += "; over time limit";
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %d %s: %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.limit_seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
