#include <gtest/gtest.h>

#include "helpers.hpp"
#include "quadrank/certify.hpp"
#include "quadrank/gen.hpp"
#include "quadrank/random.hpp"

using namespace qt;

namespace {
Errc certify_error(const RationalMatrix& w) {
  try {
    structural_certificate(w);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::SpecError;
}
}  // namespace

TEST(StructuralCertificate, PrimeSlices) {
  const std::pair<unsigned, std::size_t> cases[] = {{4, 2}, {6, 8}, {8, 35}, {10, 105}};
  for (auto [n, bound] : cases) {
    auto c = structural_certificate(matrix_P(n).matrix);
    EXPECT_EQ(c.p, nearest_prime(n));
    EXPECT_EQ(c.bound, bound);
    EXPECT_EQ(c.diag_value, Integer(c.p) * (c.p - 1));
    EXPECT_TRUE(c.checks.diag_constant && c.checks.diag_value && c.checks.offdiag_subfield_membership);
    EXPECT_TRUE(c.sign_independent);
  }
  EXPECT_TRUE(structural_certificate(matrix_P(6).matrix).subfield.is_rationals());
  EXPECT_TRUE(structural_certificate(matrix_P(10).matrix).subfield == basis({2, 3}));
}

TEST(StructuralCertificate, Refusals) {
  EXPECT_EQ(certify_error(rat(2, 2, {6, 5, 5, 6})), Errc::OffdiagEscapesSubfield);
  EXPECT_EQ(certify_error(cor_slack(SlackVariant::B, 3)), Errc::DiagonalNotPrimeForm);
  EXPECT_EQ(certify_error(rat(2, 2, {6, 0, 0, 2})), Errc::DiagonalNotConstant);
  EXPECT_EQ(certify_error(rat(2, 2, {4, 0, 0, 4})), Errc::DiagonalNotPrimeForm);
  EXPECT_EQ(certify_error(rat(2, 3, {6, 0, 0, 0, 6, 0})), Errc::NotSquare);
  EXPECT_EQ(certify_error(rat(2, 2, {6, -2, -2, 6})), Errc::NegativeEntry);
  RationalMatrix half = rat(2, 2, {6, 0, 0, 6});
  half(0, 1) = Rational(1, 2);
  EXPECT_EQ(certify_error(half), Errc::NonIntegerEntry);
}

TEST(ScaleToForm, Examples) {
  auto b23 = basis({2, 3});
  auto m = fmat(b23, 2, 2, {"sqrt(6)", "sqrt(2)", "0", "-sqrt(6)"});
  auto s = scale_to_form(m, 3);
  EXPECT_EQ(s(0, 0), el(b23, "sqrt(3)"));
  EXPECT_EQ(s(1, 1), el(b23, "sqrt(3)"));
  EXPECT_EQ(s(0, 1), FieldElement(b23, 1));
  try {
    scale_to_form(fmat(b23, 1, 1, {"sqrt(2)"}), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadDiagonal);
  }
}

TEST(RankCrosscheck, Examples) {
  rnd::Engine g(31);
  auto p4 = matrix_P(4).matrix;
  for (int t = 0; t < 5; ++t) EXPECT_EQ(rank_crosscheck(p4, rnd::signs(g, 4, 4), 2), 4u);
  auto p6 = matrix_P(6).matrix;
  auto all_plus = rank_crosscheck(p6, SignMatrix(15, 15), 3);
  EXPECT_GE(all_plus, 8u);
  EXPECT_LE(all_plus, 15u);
  std::size_t lowest = 15;
  for (int t = 0; t < 50; ++t) lowest = std::min(lowest, rank_crosscheck(p6, rnd::signs(g, 15, 15), 3));
  EXPECT_GE(lowest, 8u);
}

TEST(CharpolyMultiplicity, Examples) {
  EXPECT_EQ(charpoly_multiplicity_bound(FieldMatrix::lift(rat(1, 1, {0})), 2), 0u);
  EXPECT_EQ(charpoly_multiplicity_bound(FieldMatrix::lift(rat(2, 2, {0, 2, 1, 0})), 2), 1u);
  rnd::Engine g(3);
  for (int t = 0; t < 10; ++t) {
    EXPECT_LE(charpoly_multiplicity_bound(FieldMatrix::lift(rnd::rational_matrix(g, 8, 8, 5)), 3), 4u);
  }
}

// rank(sqrt(p) I + A) computed directly and via the characteristic polynomial of A.
TEST(CharpolyMultiplicity, AgreesWithElimination) {
  rnd::Engine g(47);
  auto sub = basis({2});
  auto full = basis({2, 3});
  for (std::size_t n = 2; n <= 12; ++n) {
    for (int t = 0; t < 3; ++t) {
      auto a = rnd::matrix(g, sub, n, n, 4, 0.5);
      auto c = add(embed(a, full), FieldMatrix::identity(full, n, el(full, "sqrt(3)")));
      const auto r = rank(c);
      const unsigned k = charpoly_multiplicity_bound(a, 3);
      EXPECT_GE(r, n - k);
      EXPECT_GE(n - k, (n + 1) / 2);
      EXPECT_EQ(strip_sqrt_p_diagonal(c, 3), a);
    }
  }
  // Both paths on the scaled form of P_6 (N = 15 > 12 is skipped; use a principal block).
  auto p6 = matrix_P(6).matrix;
  std::vector<std::size_t> idx = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  auto w = principal_submatrix(p6, idx);
  for (int t = 0; t < 5; ++t) {
    auto s = rnd::signs(g, 12, 12);
    auto c = scale_to_form(apply_signs(entrywise_sqrt(w), s), 3);
    const auto k = charpoly_multiplicity_bound(strip_sqrt_p_diagonal(c, 3), 3);
    EXPECT_EQ(rank_crosscheck(w, s, 3), rank(c));
    EXPECT_GE(rank(c), 12 - k);
    EXPECT_GE(12 - k, 6u);
  }
}

TEST(SlackVerify, Exhaustive) {
  for (unsigned n = 1; n <= 6; ++n) EXPECT_TRUE(slack_verify(n)) << n;
  EXPECT_THROW(slack_verify(0), Error);
}

TEST(Decomposition, ScalarCases) {
  using V = std::vector<std::vector<std::vector<Rational>>>;
  V ones_a(3, {{1}}), ones_b(2, {{1}});
  auto n = decomposition_from_psd_vectors(ones_a, ones_b);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0], RationalMatrix(3, 2, Rational(1)));

  V pa = {{{2}}, {{3}}, {{5}}}, pb = {{{1}}, {{2}}, {{3}}};
  n = decomposition_from_psd_vectors(pa, pb);
  EXPECT_EQ(n[0], rat(3, 3, {2, 4, 6, 3, 6, 9, 5, 10, 15}));
  EXPECT_EQ(rank(n[0]), 1u);
}

TEST(Decomposition, ReproducesTraceMatrix) {
  rnd::Engine g(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = static_cast<std::size_t>(rnd::uniform(g, 1, 3));
    const std::size_t rows = static_cast<std::size_t>(rnd::uniform(g, 1, 6));
    const std::size_t cols = static_cast<std::size_t>(rnd::uniform(g, 1, 6));
    auto vecs = [&](std::size_t count) {
      std::vector<std::vector<std::vector<Rational>>> out(count);
      for (auto& per : out) {
        per.assign(d, std::vector<Rational>(d));
        for (auto& v : per)
          for (auto& x : v) x = rnd::rational(g, 4);
      }
      return out;
    };
    auto al = vecs(rows), be = vecs(cols);
    auto parts = decomposition_from_psd_vectors(al, be);
    ASSERT_EQ(parts.size(), d * d);
    // Tr(E_x F_y) with E_x = sum_k a_k a_k^T, F_y = sum_k b_k b_k^T
    RationalMatrix a(rows, cols), sum(rows, cols);
    for (std::size_t x = 0; x < rows; ++x)
      for (std::size_t y = 0; y < cols; ++y)
        for (std::size_t k1 = 0; k1 < d; ++k1)
          for (std::size_t k2 = 0; k2 < d; ++k2) {
            Rational dot = 0;
            for (std::size_t i = 0; i < d; ++i) dot += al[x][k1][i] * be[y][k2][i];
            a(x, y) += dot * dot;
          }
    for (const auto& m : parts) {
      EXPECT_LE(rank(m), d);
      for (std::size_t x = 0; x < rows; ++x)
        for (std::size_t y = 0; y < cols; ++y) sum(x, y) += m(x, y) * m(x, y);
    }
    EXPECT_EQ(sum, a);
  }
}

TEST(Extension, PrimeSliceSix) {
  auto w = matrix_P(6).matrix;
  auto rep = extension_certify(canonical_decomposition(w, 2), w, 3, true);
  EXPECT_EQ(rep.N, 15u);
  EXPECT_EQ(rep.d, 2u);
  EXPECT_EQ(rep.sigma_size, 16u);
  EXPECT_TRUE(rep.diag_blocks_unit);
  EXPECT_TRUE(rep.offdiag_in_subfield);
  EXPECT_EQ(rep.rank_C, 120u);
  ASSERT_TRUE(rep.rank_C_exact.has_value());
  EXPECT_GE(*rep.rank_C_exact, 120u);
  EXPECT_EQ(rep.k_max, 15u);
  EXPECT_EQ(rep.required, 8u);
  EXPECT_TRUE(rep.conclusion);
  const auto text = format_extension(rep, ReportFormat::Text);
  EXPECT_NE(text.find("rank(C) >= 120, conclude k*4 >= 8"), std::string::npos);
}

TEST(Extension, DegenerateSingleSigma) {
  auto w = matrix_P(4).matrix;
  auto rep = extension_certify(canonical_decomposition(w, 1), w, 2);
  EXPECT_EQ(rep.d, 1u);
  EXPECT_EQ(rep.required, 2u);
  EXPECT_GE(rep.k_max, 2u);
  EXPECT_TRUE(rep.conclusion);
}

TEST(Extension, InvalidDecomposition) {
  auto w = matrix_P(6).matrix;
  auto bs = canonical_decomposition(w, 2);
  bs[0] = RationalMatrix(15, 15, Rational(1, 2));
  try {
    extension_certify(bs, w, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DecompositionInvalid);
  }
  bs.pop_back();
  EXPECT_THROW(extension_certify(bs, w, 3), Error);
}

TEST(Extension, SplitDecomposition) {
  // B_1 = 3/5, B_2 = 4/5 everywhere: a genuine two-term decomposition.
  auto w = matrix_P(6).matrix;
  std::vector<RationalMatrix> bs(4, RationalMatrix(15, 15));
  bs[0] = RationalMatrix(15, 15, Rational(3, 5));
  bs[1] = RationalMatrix(15, 15, Rational(4, 5));
  auto rep = extension_certify(bs, w, 3);
  EXPECT_TRUE(rep.diag_blocks_unit);
  EXPECT_TRUE(rep.conclusion);
}

TEST(Reports, CertificateText) {
  auto c = structural_certificate(matrix_P(6).matrix);
  auto text = format_certificate(c, ReportFormat::Text);
  EXPECT_NE(text.find("CERTIFIED rootrank >= 8 (all sign patterns)"), std::string::npos);
  auto kv = format_certificate(c, ReportFormat::Kv);
  EXPECT_NE(kv.find("bound: 8"), std::string::npos);
  EXPECT_NE(kv.find("p: 3"), std::string::npos);
}
