#include <gtest/gtest.h>

#include "nagcd/text_format.hpp"
#include "test_support.hpp"

namespace nagcd {
namespace {

TEST(ParseSeries, Examples) {
  Series f = parse_series("z1^2*z2 - (1/2)*z2", 2);
  EXPECT_EQ(f.num_terms(), 2u);
  EXPECT_EQ(f.coeff({0, 1}), LaurentScalar(Rational(-1, 2)));

  Series g = parse_series("(1 + 3*t^2)*z1", 1);
  EXPECT_EQ(g.coeff({1}).terms().size(), 2u);

  try {
    parse_series("z3", 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("column 3"), std::string::npos) << e.what();
  }
}

TEST(ParseSeries, RejectsAboveCap) {
  EXPECT_THROW(parse_series("z1^9", 1, 8), Error);
  EXPECT_THROW(parse_series("(z1 + 1)^2", 1, 8), Error);  // '^' on parentheses is not in the grammar
  EXPECT_NO_THROW(parse_series("z1^8", 1, 8));
}

TEST(ParseSeries, InfersVariableCount) {
  EXPECT_EQ(parse_series("z3 + t^-2").nvars(), 3u);
}

TEST(ParseScalar, LaurentTerms) {
  LaurentScalar s = parse_scalar("1/2*t^-1 - 3 + t^(-2)");
  EXPECT_EQ(s.val(), Valuation(-2));
  EXPECT_EQ(s.to_string(), "t^-2 + 1/2*t^-1 - 3");
  EXPECT_EQ(parse_scalar(s.to_string()), s);
}

TEST(PrintSeries, CanonicalRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Series f = testing::random_poly(rng, 1 + i % 3, 4, 8, 8);
    const std::string text = to_string(f);
    Series g = parse_series(text, f.nvars(), 8);
    EXPECT_EQ(g, f) << text;
    EXPECT_EQ(to_string(g), text);
    EXPECT_EQ(series_from_json(to_json(f)), f);
  }
}

TEST(PrintSeries, Json) {
  Series f = parse_series("(1/2 + 3*t^2)*z1^2*z2", 2);
  EXPECT_EQ(to_json(f).dump(), R"({"D":8,"m":2,"terms":[{"coeff":[[0,"1/2"],[2,"3"]],"exp":[2,1]}]})");
  EXPECT_EQ(to_string(f), "(1/2 + 3*t^2)*z1^2*z2");
}

}  // namespace
}  // namespace nagcd
