#include <gtest/gtest.h>

#include "helpers.hpp"
#include "quadrank/sigma.hpp"

using namespace qt;

namespace {
IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}
}  // namespace

TEST(Sigma, Single) {
  auto f = build_sigma(1);
  ASSERT_EQ(f.matrices.size(), 1u);
  EXPECT_EQ(f.matrices[0], pauli::Y());
  EXPECT_EQ(mul(pauli::Y(), pauli::Y()), pauli::I4());
}

TEST(Sigma, Pair) {
  auto f = build_sigma(2);
  ASSERT_EQ(f.matrices.size(), 2u);
  EXPECT_EQ(f.matrices[0], pauli::Y());
  EXPECT_EQ(f.matrices[1], pauli::X());
  auto xy = mul(pauli::X(), pauli::Y()), yx = mul(pauli::Y(), pauli::X());
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(xy.data()[i], -yx.data()[i]);
}

TEST(Sigma, Triple) {
  auto f = build_sigma(3);
  ASSERT_EQ(f.size(), 16u);
  EXPECT_EQ(f.matrices[0], kronecker(pauli::Y(), pauli::I4()));
  EXPECT_EQ(f.matrices[1], kronecker(pauli::X(), pauli::I4()));
  EXPECT_EQ(f.matrices[2], kronecker(pauli::Z(), pauli::Y()));
  IntMatrix s(16, 16);
  for (std::size_t i = 0; i < 256; ++i)
    s.data()[i] = f.matrices[0].data()[i] + 2 * f.matrices[1].data()[i] + 3 * f.matrices[2].data()[i];
  auto sq = mul(s, s);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(sq(i, j), i == j ? 14 : 0);
  EXPECT_TRUE(verify_clifford_square(f, {1, 2, 3}));
}

TEST(Sigma, FamiliesVerify) {
  for (unsigned ell = 1; ell <= 8; ++ell) {
    auto f = build_sigma(ell);
    EXPECT_EQ(f.matrices.size(), ell);
    EXPECT_EQ(f.size(), std::size_t{1} << (2 * ((ell + 1) / 2)));
    EXPECT_TRUE(verify_sigma(f).ok()) << ell;
  }
}

TEST(Sigma, DetectsBrokenFamily) {
  auto f = build_sigma(3);
  f.matrices[2] = f.matrices[1];
  EXPECT_FALSE(verify_sigma(f).anticommute_ok);
}

TEST(Sigma, Cap) {
  for (unsigned ell : {0u, 11u}) {
    try {
      build_sigma(ell);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::CapExceeded);
    }
  }
}
