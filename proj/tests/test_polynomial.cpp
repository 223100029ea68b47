#include <gtest/gtest.h>

#include "helpers.hpp"
#include "quadrank/polynomial.hpp"
#include "quadrank/random.hpp"

using namespace qt;

namespace {
FieldPolynomial poly(std::vector<long> c, PrimeBasis b = PrimeBasis()) {
  return FieldPolynomial::from_rationals(b, std::vector<Rational>(c.begin(), c.end()));
}
}  // namespace

TEST(PolyDivmod, Examples) {
  auto d = poly_divmod(poly({-2, 0, 1}), poly({-1, 1}));
  EXPECT_EQ(d.quotient, poly({1, 1}));
  EXPECT_EQ(d.remainder, poly({-1}));

  auto f = poly({-3, 0, 1}) * poly({5, 1});
  d = poly_divmod(f, poly({-3, 0, 1}));
  EXPECT_EQ(d.quotient, poly({5, 1}));
  EXPECT_TRUE(d.remainder.is_zero());
  EXPECT_EQ(d.remainder.degree(), -1);

  d = poly_divmod(poly({0, 0, 0, 1}), poly({-3, 0, 1}));
  EXPECT_EQ(d.quotient, poly({0, 1}));
  EXPECT_EQ(d.remainder, poly({0, 3}));
}

TEST(PolyDivmod, ZeroDivisor) {
  try {
    poly_divmod(poly({1, 1}), poly({}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByZeroPolynomial);
  }
}

TEST(PolyDivmod, RoundTripRandom) {
  rnd::Engine g(3);
  for (auto b : {PrimeBasis(), basis({2}), basis({2, 3})}) {
    for (int i = 0; i < 60; ++i) {
      auto f = rnd::polynomial(g, b, rnd::uniform(g, 0, 7), 9);
      auto h = rnd::polynomial(g, b, rnd::uniform(g, 0, 4), 9);
      if (h.is_zero()) continue;
      auto d = poly_divmod(f, h);
      EXPECT_EQ(h * d.quotient + d.remainder, f);
      EXPECT_LT(d.remainder.degree(), h.degree() > 0 ? h.degree() : 1);
    }
  }
}

TEST(SqrtRootMultiplicity, Examples) {
  auto q = poly({-3, 0, 1}) * poly({-3, 0, 1}) * poly({1, 1});
  EXPECT_EQ(sqrt_root_multiplicity(q, 3), 2u);
  EXPECT_EQ(sqrt_root_multiplicity(poly({-5, 1}), 2), 0u);
  EXPECT_EQ(sqrt_root_multiplicity(poly({-2, 0, 1}, basis({3})), 2), 1u);
  EXPECT_EQ(sqrt_root_multiplicity(poly({}), 2), kInfiniteMultiplicity);
}

TEST(SqrtRootMultiplicity, PrimeInsideField) {
  try {
    sqrt_root_multiplicity(poly({-2, 0, 1}, basis({2})), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PrimeInsideField);
  }
}

TEST(SqrtRootMultiplicity, PlantedPowers) {
  rnd::Engine g(5);
  for (auto b : {PrimeBasis(), basis({2})}) {
    for (int i = 0; i < 50; ++i) {
      const unsigned k = static_cast<unsigned>(rnd::uniform(g, 0, 4));
      auto q = rnd::polynomial(g, b, rnd::uniform(g, 0, 3), 6);
      if (q.is_zero()) q = FieldPolynomial::from_rationals(b, {1});
      // Strip any accidental x^2-3 factor from the cofactor first.
      const unsigned base = sqrt_root_multiplicity(q, 3);
      for (unsigned j = 0; j < k; ++j) q = q * FieldPolynomial::x_squared_minus(b, 3);
      EXPECT_EQ(sqrt_root_multiplicity(q, 3), base + k);
    }
  }
}
