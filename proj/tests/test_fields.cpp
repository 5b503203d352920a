#include <gtest/gtest.h>

#include <optional>
#include <random>
#include <set>

#include "support.hpp"
#include "wittforge/oracle.hpp"

using namespace wittforge;
using wittforge::test::cls;
using wittforge::test::field;

TEST(CanonicalSquareClass, RationalDropsSquareFactors) {
  auto q = FieldTower::rationals();
  EXPECT_EQ(cls(q, "18").to_string(), "2");
  EXPECT_EQ(cls(q, "-12").to_string(), "-3");
  EXPECT_EQ(cls(q, "1/8").to_string(), "2");
  EXPECT_TRUE(cls(q, "49").is_one());
}

TEST(CanonicalSquareClass, PrimeFieldMatchesSquareTable) {
  auto f5 = field("F5");
  const auto squares = oracle::squares_mod_p(5);
  for (int a = 1; a < 5; ++a) {
    const bool nonsquare = !squares.count(a);
    EXPECT_EQ(cls(f5, std::to_string(a)).base_bit(), nonsquare) << a;
  }
  EXPECT_EQ(cls(f5, "3").to_string(), "u");
  EXPECT_EQ(f5->nonresidue(), 2U);
  EXPECT_EQ(field("F13")->nonresidue(), 2U);
  EXPECT_EQ(field("F7")->nonresidue(), 3U);
}

TEST(CanonicalSquareClass, LaurentKeepsExponentParity) {
  auto k = field("F5((t))");
  EXPECT_EQ(cls(k, "4*t^3").to_string(), "t");
  EXPECT_EQ(cls(k, "2*t^-2").to_string(), "u");
  EXPECT_TRUE(cls(k, "t^2").is_one());
}

TEST(CanonicalSquareClass, Errors) {
  auto k = field("F5((t))");
  try {
    cls(k, "0*t");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroElement);
  }
  try {
    cls(k, "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
  }
  EXPECT_THROW(cls(k, "5"), Error);  // 5 = 0 in F5
}

TEST(CanonicalSquareClass, IdempotentOnRandomMonomials) {
  std::mt19937_64 rng(7);
  for (const char* d : {"Q", "F5((t))", "F13((s))((t))", "R((t))((s))"}) {
    auto k = field(d);
    for (int trial = 0; trial < 200; ++trial) {
      Monomial m;
      std::int64_t c = static_cast<std::int64_t>(rng() % 200) - 100;
      if (c == 0 || (k->base() == BaseKind::Finite && c % static_cast<std::int64_t>(k->characteristic()) == 0)) c = 1;
      m.constant = c;
      for (const auto& v : k->vars()) m.powers.emplace_back(v, static_cast<int>(rng() % 9) - 4);
      const SquareClass x = canonical_square_class(k, m);
      const SquareClass again = dsl::parse_class(k, x.to_string());
      EXPECT_EQ(x, again) << d << " " << x.to_string();
    }
  }
}

TEST(SqMul, GroupLaw) {
  auto q = FieldTower::rationals();
  EXPECT_TRUE(sq_mul(cls(q, "2"), cls(q, "2")).is_one());
  EXPECT_EQ(sq_mul(cls(q, "-2"), cls(q, "3")).to_string(), "-6");
  auto k = field("F5((t))");
  EXPECT_EQ(sq_mul(cls(k, "u"), cls(k, "u*t")).to_string(), "t");
  EXPECT_THROW(sq_mul(cls(q, "2"), cls(k, "t")), Error);
}

TEST(EnumerateSquareClasses, Sizes) {
  EXPECT_EQ(enumerate_square_classes(field("F5")).size(), 2U);
  EXPECT_EQ(enumerate_square_classes(field("F5((t))")).size(), 4U);
  EXPECT_EQ(enumerate_square_classes(field("R((t))((s))")).size(), 8U);
  std::set<std::string> names;
  for (const auto& c : enumerate_square_classes(field("F13((s))((t))"))) names.insert(c.to_string());
  EXPECT_EQ(names, (std::set<std::string>{"1", "u", "s", "u*s", "t", "u*t", "s*t", "u*s*t"}));
  try {
    enumerate_square_classes(FieldTower::rationals());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteSquareClassGroup);
  }
}

// Classes of F13((s))((t)) cross-checked by deciding squareness of the
// representative's leading coefficient with the table of squares mod 13.
TEST(EnumerateSquareClasses, DistinctBySquareSearch) {
  auto k = field("F13((s))((t))");
  const auto squares = oracle::squares_mod_p(13);
  const auto classes = enumerate_square_classes(k);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = 0; j < classes.size(); ++j) {
      // x/y is a square iff both exponents are even and the constant is a residue.
      const LaurentPoly q = LaurentPoly::representative(classes[i]) * LaurentPoly::representative(classes[j]);
      const Term& lead = q.leading();
      const bool square = lead.exps[0] % 2 == 0 && lead.exps[1] % 2 == 0 &&
                          squares.count(static_cast<std::int64_t>(lead.coeff.residue()));
      EXPECT_EQ(square, i == j);
    }
  }
}

TEST(EnumerateSquareClasses, ElementaryAbelianTwoGroup) {
  for (const char* d : {"F5", "F5((t))", "F13((s))((t))", "R((t))((s))", "F25((t))", "F3((a))((b))((c))"}) {
    auto k = field(d);
    const auto all = enumerate_square_classes(k);
    const std::set<SquareClass> set(all.begin(), all.end());
    EXPECT_EQ(set.size(), std::size_t{1} << (1 + k->num_vars())) << d;
    for (const auto& x : all) {
      EXPECT_TRUE((x * x).is_one());
      for (const auto& y : all) {
        EXPECT_TRUE(set.count(x * y));
        EXPECT_EQ(x * y, y * x);
      }
    }
  }
}

TEST(ResidueSplit, Examples) {
  auto k = field("F5((t))");
  auto r = residue_split(k, cls(k, "u*t^3"));
  EXPECT_EQ(r.parity, 1);
  EXPECT_EQ(r.unit_class.to_string(), "u");
  r = residue_split(k, cls(k, "4"));
  EXPECT_EQ(r.parity, 0);
  EXPECT_TRUE(r.unit_class.is_one());
  auto q = FieldTower::rationals();
  try {
    residue_split(q, cls(q, "3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotLaurent);
  }
}

TEST(ResidueSplit, BijectionAndRoundTrip) {
  for (const char* d : {"F5((t))", "F13((s))((t))", "R((t))((s))"}) {
    auto k = field(d);
    std::set<std::pair<int, SquareClass>> seen;
    for (const auto& x : enumerate_square_classes(k)) {
      const auto r = residue_split(k, x);
      EXPECT_TRUE(seen.insert({r.parity, r.unit_class}).second);
      EXPECT_EQ(lift_residue(k, r.unit_class, r.parity), x);
      for (const auto& y : enumerate_square_classes(k)) {
        const auto ry = residue_split(k, y);
        const auto rxy = residue_split(k, x * y);
        EXPECT_EQ(rxy.parity, r.parity ^ ry.parity);
        EXPECT_EQ(rxy.unit_class, r.unit_class * ry.unit_class);
      }
    }
    EXPECT_EQ(seen.size(), enumerate_square_classes(k).size());
  }
}

TEST(ExtendQuadratic, Unramified) {
  auto k = field("F5");
  auto ext = extend_quadratic(k, cls(k, "u"));
  EXPECT_EQ(ext.extended->base_order(), 25U);
  EXPECT_TRUE(ext.transfer(cls(k, "u")).is_one());
  // every element of F5 is a square in F25: check 2 and 3 have square roots there by
  // brute force over F25 = F5[i]/(i^2 - 2)
  for (int a : {2, 3}) {
    bool found = false;
    for (int x = 0; x < 5 && !found; ++x) {
      for (int y = 0; y < 5 && !found; ++y) {
        // (x + y i)^2 = x^2 + 2 y^2 + 2xy i
        found = (x * y) % 5 == 0 && (x * x + 2 * y * y) % 5 == a;
      }
    }
    EXPECT_TRUE(found) << a;
  }
}

TEST(ExtendQuadratic, RamifiedAtT) {
  auto k = field("F5((t))");
  auto ext = extend_quadratic(k, cls(k, "t"));
  EXPECT_EQ(ext.extended->descriptor(), "F5((r))");
  EXPECT_TRUE(ext.transfer(cls(k, "t")).is_one());
  EXPECT_EQ(ext.transfer(cls(k, "u")).to_string(), "u");
  // t -> r^2 on an explicit series: 2 + 3t becomes 2 + 3r^2, leading class unchanged
  EXPECT_EQ(ext.transfer(cls(k, "u*t")).to_string(), "u");
}

TEST(ExtendQuadratic, RamifiedAtUT) {
  auto k = field("F5((t))");
  auto ext = extend_quadratic(k, cls(k, "u*t"));
  EXPECT_EQ(ext.transfer(cls(k, "t")).to_string(), "u");
  EXPECT_TRUE(ext.transfer(cls(k, "u*t")).is_one());
  // r^2 = u t means t = r^2 / u = r^2 * u^-1; u^-1 = 3 mod 5 is a nonresidue
  EXPECT_FALSE(oracle::squares_mod_p(5).count(3));
}

TEST(ExtendQuadratic, Errors) {
  auto k = field("F13((s))((t))");
  try {
    extend_quadratic(k, cls(k, "4"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DeltaIsSquare);
  }
  try {
    extend_quadratic(k, cls(k, "s*t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDelta);
  }
  try {
    extend_quadratic(k, cls(k, "s"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDelta);
  }
}

TEST(ExtendQuadratic, TransferIsHomomorphismWithKernelDelta) {
  for (const char* d : {"F5", "F5((t))", "F13((s))((t))", "F3((t))"}) {
    auto k = field(d);
    for (const auto& delta : enumerate_square_classes(k)) {
      if (delta.is_one()) continue;
      std::optional<QuadraticExtension> ext;
      try {
        ext = extend_quadratic(k, delta);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedDelta);
        continue;
      }
      std::set<SquareClass> kernel;
      for (const auto& x : enumerate_square_classes(k)) {
        if (ext->transfer(x).is_one()) kernel.insert(x);
        for (const auto& y : enumerate_square_classes(k)) {
          EXPECT_EQ(ext->transfer(x * y), ext->transfer(x) * ext->transfer(y));
        }
      }
      EXPECT_EQ(kernel, (std::set<SquareClass>{SquareClass(k), delta})) << d << " " << delta.to_string();
    }
  }
}

TEST(FieldTower, Validation) {
  EXPECT_THROW(field("F4"), Error);
  EXPECT_THROW(field("F2"), Error);
  EXPECT_THROW(field("F15"), Error);
  EXPECT_THROW(field("F5((t))((t))"), Error);
  EXPECT_THROW(field("F5((u))"), Error);
  EXPECT_EQ(field("F13((s))((t))")->outer_var(), "t");
  EXPECT_EQ(field("F13((s))((t))")->descriptor(), "F13((s))((t))");
  EXPECT_EQ(field("F25")->descriptor(), "F25");
  EXPECT_TRUE(field("F13")->minus_one_is_square());
  EXPECT_FALSE(field("F7")->minus_one_is_square());
}
