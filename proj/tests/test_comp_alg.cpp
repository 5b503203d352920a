#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "wittforge/comp_alg.hpp"

using namespace wittforge;
using wittforge::test::cls;
using wittforge::test::field;
using wittforge::test::form;
using wittforge::test::slots;

namespace {

LaurentPoly random_poly(const FieldRef& k, std::mt19937_64& rng) {
  LaurentPoly p = LaurentPoly::zero(k);
  const int terms = static_cast<int>(rng() % 3);
  for (int i = 0; i <= terms; ++i) {
    Monomial m;
    m.constant = static_cast<std::int64_t>(rng() % 11) - 5;
    for (const auto& v : k->vars()) m.powers.emplace_back(v, static_cast<int>(rng() % 4) - 1);
    if (m.constant != 0) p += LaurentPoly::from_monomial(k, m);
  }
  return p;
}

AlgebraElement random_element(const AlgebraRef& a, std::mt19937_64& rng) {
  std::vector<LaurentPoly> c;
  for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(random_poly(a->field(), rng));
  return AlgebraElement(a, c);
}

AlgebraElement e(const AlgebraRef& a, std::size_t i) { return AlgebraElement::basis(a, i); }

}  // namespace

TEST(Quaternion, MultiplicationTable) {
  auto q = FieldTower::rationals();
  const auto h = quaternion(q, cls(q, "-1"), cls(q, "-3"));
  ASSERT_EQ(h->dim(), 4U);
  const auto one = AlgebraElement::scalar(h, LaurentPoly::one(q));
  const auto i = e(h, 1);
  const auto j = e(h, 2);
  EXPECT_EQ(i * i, AlgebraElement::scalar(h, LaurentPoly::constant(q, -1)));
  EXPECT_EQ(j * j, AlgebraElement::scalar(h, LaurentPoly::constant(q, -3)));
  EXPECT_EQ(i * j, LaurentPoly::constant(q, -1) * (j * i));
  const auto ij = i * j;
  EXPECT_EQ(ij * ij, AlgebraElement::scalar(h, LaurentPoly::constant(q, -3)));
  EXPECT_EQ(one * ij, ij);
  EXPECT_EQ(h->norm_form(), form(q, "[1,1,3,3]"));
}

TEST(CayleyDickson, DoublingElementSquaresToSlot) {
  auto k = field("F13((s))((t))");
  const auto c = cayley_dickson(quaternion(k, cls(k, "u"), cls(k, "s")), cls(k, "t"));
  ASSERT_EQ(c->dim(), 8U);
  const auto ell = e(c, 4);
  EXPECT_EQ(ell * ell, AlgebraElement::scalar(c, dsl::parse_poly(k, "t")));
  EXPECT_EQ(c->norm_form(), pfister(k, slots(k, "u,s,t")));
  EXPECT_THROW(cayley_dickson(c, cls(field("F5"), "u")), Error);
}

TEST(CayleyDickson, NormMatchesNormFormAndConjugationIsInvolution) {
  std::mt19937_64 rng(23);
  for (const char* d : {"Q", "F13((s))((t))"}) {
    auto k = field(d);
    const std::string s = k->num_vars() ? "u,s,t" : "-1,2,-5";
    const auto sl = slots(k, s);
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto a = CompositionAlgebra::from_slots(k, std::vector<SquareClass>(sl.begin(), sl.begin() + n));
      for (int trial = 0; trial < 30; ++trial) {
        const auto x = random_element(a, rng);
        const auto y = random_element(a, rng);
        EXPECT_EQ(norm(x), norm_form_value(x));
        EXPECT_EQ(conj(conj(x)), x);
        EXPECT_EQ(conj(x * y), conj(y) * conj(x));
        // x^2 - T(x) x + N(x) = 0
        const auto quad = x * x - trace(x) * x + AlgebraElement::scalar(a, norm(x));
        EXPECT_EQ(quad, AlgebraElement::zero(a));
      }
    }
  }
}

TEST(CayleyDickson, CompositionLaw) {
  std::mt19937_64 rng(29);
  for (const char* d : {"Q", "F13((s))((t))"}) {
    auto k = field(d);
    const std::string s = k->num_vars() ? "u,s,t" : "-1,2,-5";
    const auto sl = slots(k, s);
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto a = CompositionAlgebra::from_slots(k, std::vector<SquareClass>(sl.begin(), sl.begin() + n));
      for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_element(a, rng);
        const auto y = random_element(a, rng);
        EXPECT_TRUE(composition_defect(*a, x, y).is_zero()) << d << " dim " << a->dim();
      }
    }
  }
}

TEST(CayleyDickson, AssociativeUpToDimensionFour) {
  std::mt19937_64 rng(31);
  auto q = FieldTower::rationals();
  const auto h = quaternion(q, cls(q, "2"), cls(q, "-7"));
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_element(h, rng);
    const auto y = random_element(h, rng);
    const auto z = random_element(h, rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
  }
}

TEST(CayleyDickson, OctonionsAlternativeNotAssociative) {
  std::mt19937_64 rng(37);
  auto k = field("F13((s))((t))");
  const auto c = CompositionAlgebra::from_slots(k, slots(k, "u,s,t"));
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_element(c, rng);
    const auto y = random_element(c, rng);
    EXPECT_EQ((x * x) * y, x * (x * y));
    EXPECT_EQ((y * x) * x, y * (x * x));
    EXPECT_EQ((x * y) * x, x * (y * x));
  }
  bool nonassoc = false;
  for (std::size_t i = 1; i < 8 && !nonassoc; ++i) {
    for (std::size_t j = 1; j < 8 && !nonassoc; ++j) {
      for (std::size_t l = 1; l < 8 && !nonassoc; ++l) {
        nonassoc = !((e(c, i) * e(c, j)) * e(c, l) == e(c, i) * (e(c, j) * e(c, l)));
      }
    }
  }
  EXPECT_TRUE(nonassoc);
}

TEST(NormForm, TensorIdentity) {
  // norm of CD(A, c) is norm(A) (x) <1, -c>
  for (const char* d : {"Q", "F5((t))", "R((t))((s))"}) {
    auto k = field(d);
    const auto pool = k->finite_square_classes() ? enumerate_square_classes(k) : slots(k, "-1,2,3,-6");
    for (const auto& x : pool) {
      for (const auto& c : pool) {
        const auto a = quaternion(k, x, pool[1]);
        const auto doubled = cayley_dickson(a, c);
        EXPECT_EQ(doubled->norm_form().entries(), tensor(a->norm_form(), pfister(k, {c})).entries());
      }
    }
  }
}

TEST(IsSplit, Examples) {
  auto q = FieldTower::rationals();
  EXPECT_TRUE(is_split(*quaternion(q, cls(q, "1"), cls(q, "-1"))));
  EXPECT_FALSE(is_split(*quaternion(q, cls(q, "-1"), cls(q, "-1"))));
  EXPECT_TRUE(is_split(*quaternion(q, cls(q, "-1"), cls(q, "2"))));
  auto k = field("F13((s))((t))");
  EXPECT_FALSE(is_split(*CompositionAlgebra::from_slots(k, slots(k, "u,s,t"))));
  EXPECT_TRUE(is_split(*CompositionAlgebra::from_slots(k, slots(k, "u,s,u*s"))));
  try {
    is_split(*CompositionAlgebra::from_slots(k, slots(k, "u,s,t,u")));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::UnsupportedDim);
  }
}

TEST(IsSplit, SplitQuaternionsHaveZeroDivisors) {
  auto q = FieldTower::rationals();
  const auto h = quaternion(q, cls(q, "1"), cls(q, "5"));
  const auto one = AlgebraElement::scalar(h, LaurentPoly::one(q));
  EXPECT_EQ((one + e(h, 1)) * (one - e(h, 1)), AlgebraElement::zero(h));
}

TEST(Sedenions, CompositionFails) {
  auto q = FieldTower::rationals();
  const auto s = CompositionAlgebra::from_slots(q, slots(q, "-1,-1,-1,-1"));
  ASSERT_EQ(s->dim(), 16U);
  bool found = false;
  for (std::size_t i = 1; i < 16 && !found; ++i) {
    for (std::size_t j = i + 1; j < 16 && !found; ++j) {
      for (std::size_t a = 1; a < 16 && !found; ++a) {
        for (std::size_t b = a + 1; b < 16 && !found; ++b) {
          found = !composition_defect(*s, e(s, i) + e(s, j), e(s, a) - e(s, b)).is_zero();
        }
      }
    }
  }
  EXPECT_TRUE(found);
  EXPECT_THROW(cayley_dickson(s, cls(q, "-1")), Error);
}

TEST(Elements, Errors) {
  auto q = FieldTower::rationals();
  const auto a = quaternion(q, cls(q, "-1"), cls(q, "-1"));
  const auto b = quaternion(q, cls(q, "-1"), cls(q, "-1"));
  EXPECT_THROW(e(a, 1) * e(b, 1), Error);
  try {
    composition_defect(*a, e(b, 1), e(b, 2));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::AlgebraMismatch);
  }
}
