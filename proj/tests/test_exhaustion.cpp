#include <gtest/gtest.h>

#include "nagcd/exhaustion.hpp"
#include "nagcd/text_format.hpp"
#include "test_support.hpp"

namespace nagcd {
namespace {

using L = LaurentScalar;

Series P(const std::string& s, std::size_t m = 2, int cap = 8) { return parse_series(s, m, cap); }
Series P1(const std::string& s, int cap = 8) { return parse_series(s, 1, cap); }

bool divides(const Series& a, const Series& b, LogRadius r, Rng& rng) {
  return exact_divide(b, a, r, rng).status == DivStatus::kExact;
}

TEST(BallTower, Validation) {
  EXPECT_NO_THROW((BallTower{{1, 0, -1}}.validate()));
  EXPECT_THROW((BallTower{{0}}.validate()), Error);
  EXPECT_THROW((BallTower{{0, 0}}.validate()), Error);
  EXPECT_THROW((BallTower{{-1, 0}}.validate()), Error);
}

TEST(GlueBound, Examples) {
  EXPECT_TRUE(glue_pair_ok(P("1 + t^2*z1"), LogRadius(0), LogRadius(-1)));
  EXPECT_FALSE(glue_pair_ok(P("1 + t*z1"), LogRadius(0), LogRadius(-1)));
  const Series one = Series::one(2, 8);
  UnitChain<L> chain{BallTower{{2, 1, 0, -1}}, std::vector<Series>(4, one), std::vector<Series>(3, one), {}};
  EXPECT_TRUE(check_glue_bound(chain));
}

TEST(GlueBound, ChainUsesEveryEarlierLevel) {
  const Series one = Series::one(1, 8);
  UnitChain<L> chain{BallTower{{1, 0, -1}}, std::vector<Series>(3, one), {one, P1("1 + t*z1")}, {}};
  // u_{2,3} = 1 + t z at rho_1 = 1, rho_2 = 0: weight 2 > 1.
  EXPECT_TRUE(check_glue_bound(chain));
  chain.u[1] = P1("1 + z1");
  EXPECT_FALSE(check_glue_bound(chain));
}

TEST(GlueUnits, Examples) {
  const Series g = P("z1 + t*z2");
  const Series one = Series::one(2, 8);
  {
    UnitChain<L> chain{BallTower{{1, 0}}, {g, g}, {one}, {}};
    auto glued = glue_units(chain);
    EXPECT_EQ(glued.G[0], g);
    EXPECT_EQ(glued.G[1], g);
    EXPECT_EQ(glued.v[0], one);
    EXPECT_TRUE(glued.compatible);
  }
  {
    const Series u = P("1 + t^2*z1");
    UnitChain<L> chain{BallTower{{0, -1}}, {u * g, g}, {u}, {}};
    auto glued = glue_units(chain);
    EXPECT_EQ(glued.v[0], u);
    EXPECT_TRUE(agree(glued.G[0], g, LogRadius(0)));
    EXPECT_TRUE(glued.compatible);
    EXPECT_EQ(glued.tail, (std::vector<std::int64_t>{1, 0}));
  }
  {
    UnitChain<L> chain{BallTower{{1, 0, -1}}, {g, g, g}, {one, P("1 + z1")}, {}};
    EXPECT_THROW(glue_units(chain), Error);
  }
}

/// g_i = d w_i with w_i a random unit on level i and w_i(0) = 1.
UnitChain<L> random_chain(Rng& rng, const BallTower& tower, const Series& d) {
  std::vector<Series> g;
  for (std::size_t i = 0; i < tower.depth(); ++i) {
    const std::int64_t rho = tower.rhos[i];
    Series w = Series::one(2, 8);
    for (int k = 0; k < 2; ++k) {
      Series term = testing::random_poly(rng, 2, 2, 8, 8, 2, 0, 2);
      // Shift valuations so every non-constant weight is positive on level i.
      Series shifted(2, 8);
      for (const auto& [gm, c] : term.terms()) {
        if (gm.is_zero()) continue;
        shifted.add_term(gm, c * L::uniformizer_power(1 - rho * gm.total() + (c.val().value() < 0 ? -c.val().value() : 0)));
      }
      w = w * (Series::one(2, 8) + shifted);
    }
    g.push_back(d * w);
  }
  return build_unit_chain(tower, g, rng);
}

TEST(GlueUnits, RandomChainsSatisfyBoundAndCompatibility) {
  Rng rng(21);
  const BallTower tower{{2, 1, 0, -1}};
  for (int i = 0; i < 10; ++i) {
    const Series d = P(i % 2 ? "z2 - z1 + 1" : "z1 + 3*z2");
    UnitChain<L> chain = random_chain(rng, tower, d);
    ASSERT_TRUE(check_glue_bound(chain));
    auto glued = glue_units(chain);
    EXPECT_TRUE(glued.compatible);
    for (std::size_t a = 0; a < tower.depth(); ++a) {
      for (std::size_t b = a + 1; b < tower.depth(); ++b) {
        EXPECT_TRUE(agree(glued.G[a], glued.G[b], tower.level(a)));
      }
    }
  }
}

TEST(GlueUnits, TailProductsShrinkWithTheGap) {
  Rng rng(22);
  const BallTower tower{{2, 1, 0, -1}};
  UnitChain<L> chain = random_chain(rng, tower, P("z1 - z2"));
  // prod_{k >= j} u_k - 1 is small on level i < j, by at least rho_i - rho_j.
  for (std::size_t j = 1; j < chain.u.size(); ++j) {
    Series tail = Series::one(2, 8);
    for (std::size_t k = j; k < chain.u.size(); ++k) tail = tail * chain.u[k];
    for (std::size_t i = 0; i < j; ++i) {
      EXPECT_GT(gauss_val(tail - Series::one(2, 8), tower.level(i)), Valuation(tower.rhos[i] - tower.rhos[j]));
    }
  }
}

TEST(TowerGcd, Examples) {
  Rng rng(23);
  const BallTower tower{{1, 0, -1}};
  {
    const Series f1 = P("z1*z2"), f2 = P("z1*(z1 + z2)");
    auto tg = tower_gcd(f1, f2, tower, rng);
    EXPECT_TRUE(tg.consistent);
    EXPECT_EQ(tg.canonical, P("z1"));
    for (std::size_t i = 0; i < tower.depth(); ++i) {
      const LogRadius r = tower.level(i);
      const Series gi = gcd_at_radius(f1, f2, r, rng).gcd;
      EXPECT_TRUE(divides(gi, tg.G, r, rng));
      EXPECT_TRUE(divides(tg.G, gi, r, rng));
    }
  }
  {
    auto tg = tower_gcd(P("z2 - z1"), P("z2 + z1 + 1"), tower, rng);
    EXPECT_EQ(tg.canonical, Series::one(2, 8));
  }
  {
    const Series f2 = P("z1 + t*z2");
    auto tg = tower_gcd(Series(2, 8), f2, tower, rng);
    EXPECT_EQ(tg.G, f2);
    EXPECT_THROW(tower_gcd(Series(2, 8), Series(2, 8), tower, rng), Error);
  }
}

TEST(TowerGcd, UncertifiedLevelIsIndeterminate) {
  Rng rng(24);
  // The square-root branch of the node is only known to finite precision.
  const Series node = P("z2^2 - z1^2 + z1^3");
  const Series branch = P("z2") - P("z1") * series_sqrt(P("1 - z1"));
  try {
    tower_gcd(node, branch, BallTower{{2, 1, 0}}, rng);
    FAIL() << "expected an indeterminate result";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndeterminate);
  }
}

TEST(NewtonPolygon, Examples) {
  auto np = newton_polygon(P1("1 - t^(-1)*z1"));
  ASSERT_EQ(np.size(), 1u);
  EXPECT_EQ(np[0].slope, -1);
  EXPECT_EQ(np[0].length, 1);

  EXPECT_TRUE(newton_polygon(P1("z1^2")).empty());

  auto two = newton_polygon(P1("(1 - z1)*(1 - t^(-1)*z1)"));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].slope, -1);
  EXPECT_EQ(two[1].slope, 0);
  EXPECT_EQ(two[0].length, 1);
  EXPECT_EQ(two[1].length, 1);
  EXPECT_THROW(newton_polygon(Series(1, 8)), Error);
}

TEST(NewtonPolygon, SlopesIncreaseAndCollinearPointsMerge) {
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    Series f = testing::random_poly(rng, 1, 6, 8, 8);
    if (f.is_zero()) continue;
    auto np = newton_polygon(f);
    for (std::size_t k = 1; k < np.size(); ++k) EXPECT_LT(np[k - 1].slope, np[k].slope);
  }
  auto merged = newton_polygon(P1("1 + t^(-1)*z1 + t^(-2)*z1^2"));
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged[0].length, 2);
}

void expect_round_trip(const FactorList<L>& fl, const Series& f, LogRadius r) {
  EXPECT_TRUE(agree(factor_product(fl), f, r)) << to_string(factor_product(fl)) << " vs " << to_string(f);
}

bool has_root(const FactorList<L>& fl, const L& a, int mult) {
  return std::any_of(fl.roots.begin(), fl.roots.end(), [&](const auto& x) { return x.a == a && x.mult == mult; });
}

TEST(FactorOneVariable, Examples) {
  const Series f = P1("(1 - z1)*(1 - t^(-1)*z1)");
  {
    const LogRadius r(-1);
    auto fl = factor_one_variable(f, r);
    EXPECT_TRUE(fl.complete);
    EXPECT_EQ(fl.c, L(1));
    EXPECT_EQ(fl.e, 0);
    ASSERT_EQ(fl.roots.size(), 2u);
    EXPECT_TRUE(has_root(fl, L(1), 1));
    EXPECT_TRUE(has_root(fl, L::monomial(1, 1), 1));
    expect_round_trip(fl, f, r);
  }
  {
    auto fl = factor_one_variable(P1("z1^3"), LogRadius(0));
    EXPECT_EQ(fl.e, 3);
    EXPECT_TRUE(fl.roots.empty());
    EXPECT_EQ(fl.c, L(1));
  }
  {
    // |t| = 1/2 is strictly inside only once rho >= 2.
    const LogRadius r(2);
    auto fl = factor_one_variable(f, r);
    EXPECT_TRUE(fl.roots.empty());
    EXPECT_TRUE(is_unit(f, r));
    expect_round_trip(fl, f, r);
  }
  {
    // At rho = 1 the root t lies on the boundary circle |z| = r.
    const LogRadius r(1);
    auto fl = factor_one_variable(f, r);
    EXPECT_FALSE(is_unit(f, r));
    ASSERT_EQ(fl.roots.size(), 1u);
    EXPECT_TRUE(has_root(fl, L::monomial(1, 1), 1));
    expect_round_trip(fl, f, r);
  }
}

TEST(FactorOneVariable, RepeatedAndLiftedRoots) {
  {
    const Series f = P1("3*z1^2*(1 - z1)*(1 - z1)*(2 - t*z1)");
    const LogRadius r(-2);
    auto fl = factor_one_variable(f, r);
    EXPECT_TRUE(fl.complete);
    EXPECT_EQ(fl.e, 2);
    EXPECT_TRUE(has_root(fl, L(1), 2));
    EXPECT_TRUE(has_root(fl, L::monomial(2, -1), 1));
    expect_round_trip(fl, f, r);
  }
  {
    // z^2 - z - t: residue roots 0 and 1 split by slope, both simple.
    const Series f = P1("z1^2 - z1 - t");
    auto fl = factor_one_variable(f, LogRadius(0));
    EXPECT_TRUE(fl.complete);
    ASSERT_EQ(fl.roots.size(), 2u);
    for (const auto& root : fl.roots) EXPECT_TRUE(eval_at(f, {root.a}, LogRadius(0)).is_zero());
    expect_round_trip(fl, f, LogRadius(0));
  }
  {
    // z^2 - t has roots of valuation 1/2, outside the model field.
    auto fl = factor_one_variable(P1("z1^2 - t"), LogRadius(0));
    EXPECT_FALSE(fl.complete);
    EXPECT_TRUE(fl.roots.empty());
  }
  {
    // z^2 - 2: irrational residue roots.
    auto fl = factor_one_variable(P1("z1^2 - 2"), LogRadius(0));
    EXPECT_FALSE(fl.complete);
  }
}

TEST(FactorOneVariable, RootCountNeverExceedsPolygon) {
  Rng rng(26);
  for (int i = 0; i < 100; ++i) {
    Series f = testing::random_poly(rng, 1, 5, 8, 8, 4, -1, 2);
    if (f.is_zero()) continue;
    const LogRadius r(-1);
    auto fl = factor_one_variable(f, r);
    int predicted = 0;
    for (const auto& seg : newton_polygon(f)) {
      if (-seg.slope >= Rational(r.rho)) predicted += seg.length;
    }
    int found = 0;
    for (const auto& root : fl.roots) found += root.mult;
    EXPECT_LE(found, predicted);
    if (fl.complete) {
      EXPECT_EQ(found, predicted);
      expect_round_trip(fl, f, r);
    }
  }
}

}  // namespace
}  // namespace nagcd
