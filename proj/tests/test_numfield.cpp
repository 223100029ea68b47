#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "quadrank/random.hpp"

using namespace qt;

TEST(PrimeBasis, Construction) {
  auto b = field_make({3, 2});
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.primes()[0], 2u);
  EXPECT_EQ(b.primes()[1], 3u);
  EXPECT_TRUE(field_make({}).is_rationals());
  EXPECT_TRUE(field_make({2, 3}) == field_make({3, 2}));
}

TEST(PrimeBasis, Rejects) {
  try {
    field_make({4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPrimeGenerator);
  }
  try {
    field_make({2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DuplicateGenerator);
  }
  std::vector<long long> many = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};
  try {
    field_make(many);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BasisTooLarge);
  }
}

TEST(SqrtOfInteger, Examples) {
  auto b23 = basis({2, 3});
  EXPECT_EQ(sqrt_of_integer(b23, 6), FieldElement::radical(b23, 0b11));
  auto b2 = basis({2});
  EXPECT_EQ(sqrt_of_integer(b2, 8), FieldElement::radical(b2, 1, 2));
  EXPECT_EQ(sqrt_of_integer(b2, 0), FieldElement(b2));
  EXPECT_EQ(sqrt_of_integer(b2, 9), FieldElement(b2, 3));
}

TEST(SqrtOfInteger, OutsideFieldReportsMissingPrimes) {
  try {
    sqrt_of_integer(basis({2}), 3);
    FAIL();
  } catch (const OutsideFieldError& e) {
    EXPECT_EQ(e.code(), Errc::OutsideField);
    ASSERT_EQ(e.missing_primes().size(), 1u);
    EXPECT_EQ(e.missing_primes()[0], 3u);
  }
  try {
    sqrt_of_integer(basis({2}), -4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NegativeEntry);
  }
}

TEST(Arithmetic, Examples) {
  auto b2 = basis({2});
  EXPECT_EQ(el(b2, "1 + sqrt(2)") * el(b2, "1 - sqrt(2)"), FieldElement(b2, -1));
  auto b23 = basis({2, 3});
  EXPECT_EQ(el(b23, "sqrt(2)") * el(b23, "sqrt(3)"), el(b23, "sqrt(6)"));
  auto prod = el(b23, "sqrt(6)") * el(b23, "sqrt(2)");
  EXPECT_EQ(prod, el(b23, "2*sqrt(3)"));
  EXPECT_NEAR(value(prod), 2 * std::sqrt(3.0), 1e-12);
}

TEST(Arithmetic, BasisMismatch) {
  try {
    auto x = el(basis({2}), "sqrt(2)") + el(basis({3}), "sqrt(3)");
    (void)x;
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BasisMismatch);
  }
}

TEST(Invert, Examples) {
  auto b2 = basis({2});
  EXPECT_EQ(invert(el(b2, "sqrt(2)")), el(b2, "1/2*sqrt(2)"));
  EXPECT_EQ(invert(FieldElement(b2, 2)), FieldElement(b2, Rational(1, 2)));

  auto b23 = basis({2, 3});
  auto a = el(b23, "1 + sqrt(2) + sqrt(3)");
  auto e = invert(a);
  EXPECT_EQ(e * a, FieldElement(b23, 1));
  EXPECT_EQ(e, el(b23, "1/2 + 1/4*sqrt(2) - 1/4*sqrt(6)"));
  EXPECT_NEAR(value(e) * (1 + std::sqrt(2.0) + std::sqrt(3.0)), 1.0, 1e-12);
}

TEST(Invert, Zero) {
  try {
    invert(FieldElement(basis({2})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByZero);
  }
}

TEST(Embed, Examples) {
  auto b2 = basis({2}), b23 = basis({2, 3}), b235 = basis({2, 3, 5});
  auto x = embed(el(b2, "sqrt(2)"), b23);
  EXPECT_EQ(x, el(b23, "sqrt(2)"));
  EXPECT_EQ(embed(FieldElement(PrimeBasis(), 5), b235), FieldElement(b235, 5));
  EXPECT_TRUE(is_in_subfield(el(b235, "sqrt(6) + 1"), b23));
  EXPECT_FALSE(is_in_subfield(el(b235, "sqrt(10)"), b23));
  EXPECT_EQ(rebase(el(b235, "sqrt(6) + 1"), b23), el(b23, "sqrt(6) + 1"));
  try {
    embed(el(b23, "sqrt(3)"), basis({2, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotASubfield);
  }
}

TEST(Approximate, Examples) {
  auto b2 = basis({2});
  EXPECT_EQ(approximate(el(b2, "sqrt(2)"), 5), "1.4142");
  EXPECT_EQ(approximate(el(b2, "-1 + sqrt(2)"), 3), "0.414");
  EXPECT_EQ(approximate(FieldElement(b2), 4), "0");
}

TEST(TextForm, CanonicalOrderAndSeparators) {
  auto b23 = basis({2, 3});
  auto a = el(b23, "sqrt(6) - 2 + sqrt(3)/2 +  3*sqrt(2)");
  const std::string s = a.to_string();
  EXPECT_EQ(el(b23, s), a);
  EXPECT_EQ(el(b23, s).to_string(), s);
  EXPECT_EQ(FieldElement(b23).to_string(), "0");
  EXPECT_EQ(el(b23, "sqrt(12)"), el(b23, "2*sqrt(3)"));
  try {
    el(b23, "sqrt(2) +");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}

TEST(FieldProperties, RandomAxioms) {
  rnd::Engine g(7);
  for (auto primes : std::vector<std::vector<long long>>{{}, {2}, {2, 3}, {2, 3, 5}, {2, 3, 5, 7}}) {
    auto b = basis(primes);
    for (int i = 0; i < 40; ++i) {
      auto a = rnd::element(g, b, 9), c = rnd::element(g, b, 9), d = rnd::element(g, b, 9);
      EXPECT_EQ(a + c, c + a);
      EXPECT_EQ(a * c, c * a);
      EXPECT_EQ((a * c) * d, a * (c * d));
      EXPECT_EQ(a * (c + d), a * c + a * d);
      EXPECT_EQ(a - a, FieldElement(b));
      if (!a.is_zero()) {
        EXPECT_EQ(a * invert(a), FieldElement(b, 1));
      }
      EXPECT_EQ(el(b, a.to_string()).to_string(), a.to_string());
    }
  }
}

TEST(FieldProperties, ApproximateIsMultiplicative) {
  rnd::Engine g(11);
  auto b = basis({2, 3, 5});
  for (int i = 0; i < 100; ++i) {
    auto a = rnd::nonzero_element(g, b, 20), c = rnd::nonzero_element(g, b, 20);
    const double lhs = value(a * c), rhs = value(a) * value(c);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}
