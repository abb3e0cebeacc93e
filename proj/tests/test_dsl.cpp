#include <cmath>

#include <gtest/gtest.h>

#include "sconvex/dsl.hpp"

using namespace sconvex;

TEST(Dsl, ParsesExamples) {
  EXPECT_EQ(parse_function_dsl("1*x^2"), PowerSum({{1.0, 2.0}}));
  EXPECT_EQ(parse_function_dsl("0.5*x^0.5 + 2.5"), PowerSum({{0.5, 0.5}, {2.5, 0.0}}));
  EXPECT_EQ(parse_function_dsl("  -1.5e-1 * x ^ -2 + +3 "), PowerSum({{-0.15, -2.0}, {3.0, 0.0}}));
  EXPECT_EQ(parse_function_dsl("7"), PowerSum::constant(7.0));
}

TEST(Dsl, CoefficientIsMandatory) {
  try {
    parse_function_dsl("x^2");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 0u);
    EXPECT_EQ(e.expected(), "number");
  }
}

TEST(Dsl, ReportsOffsets) {
  auto offset_of = [](const char* text) {
    try {
      parse_function_dsl(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1L;
  };
  EXPECT_EQ(offset_of("1*y^2"), 2);
  EXPECT_EQ(offset_of("1*x2"), 3);
  EXPECT_EQ(offset_of("1*x^2 +"), 7);
  EXPECT_EQ(offset_of("1*x^2 3"), 6);
  EXPECT_EQ(offset_of("1e*x^2"), 2);
  EXPECT_EQ(offset_of(""), 0);
  EXPECT_EQ(offset_of("."), 0);
  EXPECT_EQ(offset_of("1e999"), 0);
}

TEST(DslProperties, PrintParseRoundTrip) {
  SplitMix64 rng(77);
  for (int i = 0; i < 2000; ++i) {
    std::vector<PowerTerm> terms;
    const int n = 1 + static_cast<int>(rng.index(4));
    for (int k = 0; k < n; ++k) {
      const double c = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-8, 8));
      const double e = rng.index(4) == 0 ? 0.0 : rng.uniform(-5, 5);
      terms.push_back({c, e});
    }
    const PowerSum ps(terms);
    const std::string text = print_function_dsl(ps);
    const PowerSum back = parse_function_dsl(text);
    EXPECT_EQ(back, ps) << text;
    EXPECT_EQ(print_function_dsl(back), text);
  }
}
