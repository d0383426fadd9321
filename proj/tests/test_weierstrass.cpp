#include <gtest/gtest.h>

#include "nagcd/text_format.hpp"
#include "nagcd/weierstrass.hpp"
#include "test_support.hpp"

namespace nagcd {
namespace {

using L = LaurentScalar;
using Sh = Shear<L>;

Series P(const std::string& s, std::size_t m = 2, int cap = 8) { return parse_series(s, m, cap); }

const char* kNode = "z2^2 - z1^2 + z1^3";  // z2^2 - z1^2 (1 - z1)

TEST(Distinguished, Examples) {
  EXPECT_EQ(distinguished_degree(P(kNode), LogRadius(0)).degree, 2);
  EXPECT_TRUE(distinguished_degree(P(kNode), LogRadius(0)).certified);
  EXPECT_FALSE(distinguished_degree(P("z1*z2"), LogRadius(0)).degree);
  EXPECT_EQ(distinguished_degree(P("1 + t*z2"), LogRadius(0)).degree, 0);
  EXPECT_THROW(distinguished_degree(Series(2, 8), LogRadius(0)), Error);
}

TEST(Distinguished, DegreeZeroMeansUnit) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    Series f = testing::random_poly(rng, 2, 3, 8, 8);
    if (f.is_zero()) continue;
    for (int rho = -1; rho <= 1; ++rho) {
      auto d = distinguished_degree(f, LogRadius(rho));
      if (d.degree == 0) { EXPECT_TRUE(is_unit(f, LogRadius(rho))); }
    }
  }
}

TEST(ApplyShear, Examples) {
  Sh one{{L(1)}};
  EXPECT_EQ(apply_shear(P("z1*z2"), one), P("z1*z2 + z2^2"));
  EXPECT_EQ(apply_shear(P("z2^3"), Sh{{L(17)}}), P("z2^3"));
  Series f = P("t*z1^3 - z1*z2 + 3");
  Sh u{{L(Rational(5, 2)) + L::monomial(1, 1)}};
  EXPECT_EQ(apply_shear(apply_shear(f, u), u.inverse()), f);
  EXPECT_THROW(apply_shear(f, Sh{}), Error);
  EXPECT_THROW(apply_shear(f, Sh{{L::monomial(1, -1)}}), Error);
}

TEST(GenericShear, Examples) {
  Rng rng(3);
  Sh s = generic_shear<L>({P("z1*z2")}, {LogRadius(0)}, rng);
  ASSERT_EQ(s.u.size(), 1u);
  EXPECT_NE(s.u[0].residue(), 0);
  EXPECT_EQ(distinguished_degree(apply_shear(P("z1*z2"), s), LogRadius(0)).degree, 2);

  EXPECT_TRUE(generic_shear<L>({P("z2")}, {LogRadius(4)}, rng).is_identity());

  Sh both = generic_shear<L>({P("z1"), P("z2")}, {LogRadius(0), LogRadius(1)}, rng);
  for (const char* f : {"z1", "z2"}) {
    for (int rho : {0, 1}) {
      Series h = apply_shear(P(f), both);
      EXPECT_EQ(distinguished_degree(h, LogRadius(rho)).degree, 1) << f << " " << rho;
      EXPECT_EQ(gauss_val(h, LogRadius(rho)), gauss_val(P(f), LogRadius(rho)));
    }
  }
}

TEST(GenericShear, PreservesGaussValuation) {
  std::mt19937_64 rng(11);
  Rng srng(12);
  for (int i = 0; i < 60; ++i) {
    Series f = testing::random_poly(rng, 2 + i % 2, 4, 8, 8);
    if (f.is_zero()) continue;
    std::vector<LogRadius> rhos{LogRadius(-1), LogRadius(0), LogRadius(2)};
    Sh s = generic_shear<L>({f}, rhos, srng);
    Series h = apply_shear(f, s);
    for (auto r : rhos) {
      EXPECT_EQ(gauss_val(h, r), gauss_val(f, r));
      EXPECT_TRUE(distinguished_degree(h, r).degree);
    }
  }
}

TEST(WeierstrassDivide, Examples) {
  auto d = weierstrass_divide(P("z2^2"), P("z2"), LogRadius(0));
  EXPECT_EQ(d.quotient, P("z2"));
  EXPECT_TRUE(d.remainder.is_zero());

  auto e = weierstrass_divide(P("z2"), P("z2 - t"), LogRadius(1));
  EXPECT_EQ(e.quotient, P("1"));
  EXPECT_EQ(e.remainder, P("t"));
  EXPECT_TRUE(e.exact);

  auto f = weierstrass_divide(P("z1"), P("z2^2 - z1"), LogRadius(0));
  EXPECT_TRUE(f.quotient.is_zero());
  EXPECT_EQ(f.remainder, P("z1"));

  EXPECT_THROW(weierstrass_divide(P("z1"), P("z1*z2"), LogRadius(0)), Error);
}

TEST(WeierstrassDivide, PolynomialLongDivisionOracle) {
  // One variable at rho = 1: dividing by z - t is evaluation at t.
  Series g = P("z1^3 + 2*z1 + 5", 1);
  auto d = weierstrass_divide(g, P("z1 - t", 1), LogRadius(1));
  EXPECT_EQ(d.remainder, P("5 + 2*t + t^3", 1));
  EXPECT_EQ(d.quotient, P("z1^2 + t*z1 + 2 + t^2", 1));
}

TEST(WeierstrassDivide, IdentityAndSchedules) {
  std::mt19937_64 rng(21);
  Rng srng(22);
  int tested = 0;
  for (int i = 0; i < 80; ++i) {
    const std::size_t m = 1 + i % 3;
    Series f = testing::random_poly(rng, m, 3, 8, 8);
    Series g = testing::random_poly(rng, m, 4, 8, 8);
    if (f.is_zero()) continue;
    LogRadius r(i % 5 - 2);
    Series fs = apply_shear(f, generic_shear<L>({f}, {r}, srng));
    auto a = weierstrass_divide(g, fs, r, DivisionSchedule::kFull);
    auto b = weierstrass_divide(g, fs, r, DivisionSchedule::kMonomial);
    EXPECT_LT(last_degree(a.remainder), a.degree);
    EXPECT_TRUE(agree(a.quotient * fs + a.remainder, g, r)) << to_string(g) << " / " << to_string(fs);
    EXPECT_TRUE(agree(a.quotient, b.quotient, r));
    EXPECT_TRUE(agree(a.remainder, b.remainder, r));
    ++tested;
  }
  EXPECT_GT(tested, 60);
}

TEST(WeierstrassPrep, Examples) {
  auto p = weierstrass_prep(P(kNode), LogRadius(0));
  EXPECT_EQ(p.unit, P("1"));
  EXPECT_EQ(p.poly, P(kNode));

  auto q = weierstrass_prep(P("2*z2"), LogRadius(0));
  EXPECT_EQ(q.unit, P("2"));
  EXPECT_EQ(q.poly, P("z2"));

  auto r = weierstrass_prep(P("(1 + t*z1)*z2"), LogRadius(0));
  EXPECT_EQ(r.unit, P("1 + t*z1"));
  EXPECT_EQ(r.poly, P("z2"));

  EXPECT_THROW(weierstrass_prep(P("z1*z2"), LogRadius(0)), Error);
}

TEST(WeierstrassPrep, RoundTripUniquenessNonUnit) {
  std::mt19937_64 rng(31);
  Rng srng(32);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = 1 + i % 3;
    Series f = testing::random_poly(rng, m, 4, 8, 8);
    if (f.is_zero()) continue;
    LogRadius r(i % 5 - 2);
    Series fs = apply_shear(f, generic_shear<L>({f}, {r}, srng));
    auto a = weierstrass_prep(fs, r, DivisionSchedule::kFull);
    auto b = weierstrass_prep(fs, r, DivisionSchedule::kMonomial);
    EXPECT_TRUE(agree(a.unit * a.poly, fs, r)) << to_string(fs);
    EXPECT_TRUE(is_weierstrass_poly(a.poly, r)) << to_string(a.poly);
    EXPECT_TRUE(is_unit(a.unit, r));
    EXPECT_TRUE(agree(a.unit, b.unit, r));
    EXPECT_TRUE(agree(a.poly, b.poly, r));
    if (a.degree > 0) { EXPECT_FALSE(is_unit(a.poly, r)); }
  }
}

TEST(IsWeierstrassPoly, Examples) {
  EXPECT_TRUE(is_weierstrass_poly(P(kNode), LogRadius(0)));
  EXPECT_FALSE(is_weierstrass_poly(P("z2 - t^-1"), LogRadius(0)));
  EXPECT_TRUE(is_weierstrass_poly(P("1"), LogRadius(0)));
  EXPECT_FALSE(is_weierstrass_poly(P("2*z2"), LogRadius(0)));
}

TEST(NormalizeFactors, Examples) {
  LogRadius r(0);
  Series w = P("z2^2 - z1^2");
  auto a = normalize_wp_factors(w, P("z2 - z1"), P("z2 + z1"), r);
  EXPECT_EQ(a.u1, P("1", 1));
  EXPECT_EQ(a.w1, P("z2 - z1"));
  auto b = normalize_wp_factors(w, P("2*z2 - 2*z1"), P("1/2*z2 + 1/2*z1"), r);
  EXPECT_EQ(b.u1, P("2", 1));
  EXPECT_EQ(b.u2, P("1/2", 1));
  EXPECT_EQ(b.w1 * b.w2, w);
  EXPECT_THROW(normalize_wp_factors(P("z1*z2^2"), P("z1*z2"), P("z2"), r), Error);
}

TEST(NormalizeFactors, PlantedUnitScalings) {
  std::mt19937_64 rng(41);
  const LogRadius r(0);
  auto integral_z1 = [&](int deg) { return lift_to(testing::random_poly(rng, 1, deg, 8, 8, 3, 0, 2), 2, 8); };
  for (int i = 0; i < 40; ++i) {
    Series f1 = P("z2") + integral_z1(2);
    Series f2 = P("z2^2") + integral_z1(2) * P("z2") + integral_z1(2);
    ASSERT_TRUE(is_weierstrass_poly(f1, r));
    ASSERT_TRUE(is_weierstrass_poly(f2, r));
    Series w = f1 * f2;
    Series c = P("3", 1) + L::uniformizer_power(1) * testing::random_poly(rng, 1, 2, 8, 8, 3, 0, 2);
    Series g1 = lift_to(c, 2, 8) * f1;
    Series g2 = lift_to(invert_unit(c, r), 2, 8) * f2;
    auto n = normalize_wp_factors(w, g1, g2, r);
    EXPECT_TRUE(agree(n.w1 * n.w2, w, r));
    EXPECT_TRUE(agree(n.w1, f1, r));
    EXPECT_TRUE(agree(n.w2, f2, r));
    EXPECT_TRUE(agree(n.u1, c, r));
  }
}

TEST(ExactDivide, Basic) {
  Rng rng(5);
  auto a = exact_divide(P("z2^2 - z1^2"), P("z2 - z1"), LogRadius(0), rng);
  EXPECT_EQ(a.status, DivStatus::kExact);
  EXPECT_EQ(a.quotient, P("z2 + z1"));
  auto b = exact_divide(P("z2^2 + z1^2"), P("z2 - z1"), LogRadius(0), rng);
  EXPECT_EQ(b.status, DivStatus::kNotDivisible);
  auto c = exact_divide(P("z1*z2"), P("z1"), LogRadius(0), rng);
  EXPECT_EQ(c.status, DivStatus::kExact);
  EXPECT_EQ(c.quotient, P("z2"));
  auto d = exact_divide(P("z1"), P("1 - z1"), LogRadius(1), rng);
  EXPECT_EQ(d.status, DivStatus::kExact);
  EXPECT_TRUE(agree(d.quotient * P("1 - z1"), P("z1"), LogRadius(1)));
}

}  // namespace
}  // namespace nagcd
