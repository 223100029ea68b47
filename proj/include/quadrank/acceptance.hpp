#pragma once

// End-to-end acceptance criteria. Each check runs at desk scale with exact
// arithmetic and fixed seeds; `run_acceptance` returns one result per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <functional>
#include <string>
#include <vector>

#include "quadrank/certify.hpp"
#include "quadrank/gen.hpp"
#include "quadrank/matrix_io.hpp"
#include "quadrank/oracle.hpp"
#include "quadrank/random.hpp"
#include "quadrank/sigma.hpp"

namespace quadrank::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Multiplicity of the root r of q (over r's field) by repeated synthetic division by x - r.
inline unsigned linear_root_multiplicity(FieldPolynomial q, const FieldElement& r) {
  unsigned k = 0;
  while (!q.is_zero() && q.evaluate(r).is_zero()) {
    const auto& a = q.coeffs();
    std::vector<FieldElement> b(a.size() - 1, FieldElement(q.basis()));
    FieldElement carry(q.basis());
    for (std::size_t i = a.size() - 1; i-- > 0;) {
      carry = a[i + 1] + carry * r;
      b[i] = carry;
    }
    q = FieldPolynomial(q.basis(), std::move(b));
    ++k;
  }
  return k;
}

inline std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

}  // namespace detail

inline CriterionResult certificate_reproduction() {
  CriterionResult r{1, "structural certificate on P_n, n in {4,6,8,10}", false, {}, 0};
  const unsigned ns[] = {4, 6, 8, 10};
  const std::size_t bounds[] = {2, 8, 35, 105};
  const unsigned long primes[] = {2, 3, 3, 5};
  r.passed = true;
  for (int i = 0; i < 4; ++i) {
    auto t0 = detail::Clock::now();
    auto cert = structural_certificate(matrix_P(ns[i]).matrix);
    double dt = detail::since(t0);
    bool ok = cert.bound == bounds[i] && cert.p == primes[i] && cert.sign_independent && dt < 10.0;
    r.passed = r.passed && ok;
    r.detail += "n=" + std::to_string(ns[i]) + ":p=" + std::to_string(cert.p) + ",bound=" + std::to_string(cert.bound) +
                "(" + detail::fmt_seconds(dt) + ") ";
  }
  return r;
}

inline CriterionResult sign_sampling() {
  CriterionResult r{2, "sign sampling: rank_crosscheck >= bound, n in {6,8}, 50 signs each", false, {}, 0};
  rnd::Engine g(20140601);
  int good = 0, total = 0;
  double n8_time = 0;
  for (unsigned n : {6u, 8u}) {
    auto t0 = detail::Clock::now();
    auto slice = matrix_P(n);
    auto cert = structural_certificate(slice.matrix);
    std::size_t min_rank = slice.matrix.rows();
    for (int s = 0; s < 50; ++s) {
      auto signs = rnd::signs(g, slice.matrix.rows(), slice.matrix.cols());
      std::size_t rk = rank_crosscheck(slice.matrix, signs, cert.p);
      min_rank = std::min(min_rank, rk);
      ++total;
      if (rk >= cert.bound) ++good;
    }
    if (n == 8) n8_time = detail::since(t0);
    r.detail += "n=" + std::to_string(n) + ":min=" + std::to_string(min_rank) + ">=" + std::to_string(cert.bound) + " ";
  }
  r.passed = good == total && total == 100 && n8_time < 300.0;
  r.detail += std::to_string(good) + "/" + std::to_string(total) + " n=8 in " + detail::fmt_seconds(n8_time);
  return r;
}

inline CriterionResult oracle_agreement() {
  CriterionResult r{3, "brute force: P_4 -> 4, fawziQ(2,3,4) -> 3, oracle >= certificate", false, {}, 0};
  auto p4 = matrix_P(4).matrix;
  auto bf4 = sqrt_rank_bruteforce(p4);
  auto q = fawzi_Q({2, 3, 4});
  auto bfq = sqrt_rank_bruteforce(q);
  const std::size_t rank_q = rank(q);
  bool ok = bf4.min_rank == 4 && bf4.exhausted && bfq.min_rank == 3 && bfq.exhausted && rank_q == 2;
  r.detail = "P_4=" + std::to_string(bf4.min_rank) + " Q=" + std::to_string(bfq.min_rank) +
             " rank(Q)=" + std::to_string(rank_q);

  // Every certified instance small enough to enumerate.
  std::vector<RationalMatrix> certified{p4, RationalMatrix(2, 2, {6, 2, 2, 6})};
  rnd::Engine g(77);
  auto p6 = matrix_P(6).matrix;
  for (int t = 0; t < 6; ++t) {
    std::vector<std::size_t> idx(15);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), g);
    idx.resize(t < 3 ? 3 : 4);
    std::sort(idx.begin(), idx.end());
    certified.push_back(principal_submatrix(p6, idx));
  }
  int agree = 0;
  for (const auto& w : certified) {
    auto cert = structural_certificate(w);
    auto bf = sqrt_rank_bruteforce(w);
    if (bf.exhausted && bf.min_rank >= cert.bound) ++agree;
  }
  ok = ok && agree == static_cast<int>(certified.size());
  r.detail += " oracle>=bound on " + std::to_string(agree) + "/" + std::to_string(certified.size());
  r.passed = ok;
  return r;
}

inline CriterionResult multiplicity_suite() {
  CriterionResult r{4, "planted (x^2-p)^k multiplicity, 200 polynomials over Q and Q(sqrt2)", false, {}, 0};
  rnd::Engine g(4242);
  int good = 0, total = 0;
  for (int t = 0; t < 200; ++t) {
    const bool over_q = t % 2 == 0;
    const PrimeBasis base = over_q ? PrimeBasis() : PrimeBasis::make({2});
    const unsigned long choices_q[] = {2, 3, 5, 7};
    const unsigned long choices_r2[] = {3, 5, 7, 11};
    const unsigned long p = over_q ? choices_q[t % 8 / 2] : choices_r2[t % 8 / 2];
    const PrimeBasis ext = base.extended(std::vector<unsigned long>{p});
    const FieldElement root = sqrt_of_integer(ext, Integer(p));
    const unsigned k = static_cast<unsigned>(rnd::uniform(g, 0, 3));
    FieldPolynomial h(base);
    for (;;) {
      h = rnd::polynomial(g, base, rnd::uniform(g, 0, 4), 6);
      auto he = h.embedded(ext);
      if (!he.evaluate(root).is_zero() && !he.evaluate(-root).is_zero()) break;
    }
    FieldPolynomial q = h;
    for (unsigned i = 0; i < k; ++i) q = q * FieldPolynomial::x_squared_minus(base, p);
    const unsigned got = sqrt_root_multiplicity(q, p);
    const auto qe = q.embedded(ext);
    const unsigned plus = detail::linear_root_multiplicity(qe, root);
    const unsigned minus = detail::linear_root_multiplicity(qe, -root);
    // Unplanted polynomials: a root at +-sqrt(p) exactly when the multiplicity is positive.
    auto free_q = rnd::polynomial(g, base, rnd::uniform(g, 1, 5), 4);
    const unsigned kf = sqrt_root_multiplicity(free_q, p);
    const auto fe = free_q.embedded(ext);
    const bool zero_plus = fe.evaluate(root).is_zero(), zero_minus = fe.evaluate(-root).is_zero();
    ++total;
    if (got == k && plus == k && minus == k && zero_plus == (kf >= 1) && zero_minus == (kf >= 1)) ++good;
  }
  r.passed = good == total;
  r.detail = std::to_string(good) + "/" + std::to_string(total) + " agree, counterexamples " +
             std::to_string(total - good);
  return r;
}

inline CriterionResult rank_suite() {
  CriterionResult r{5, "rank(sqrt3 I + A) >= ceil(N/2), 100 random A over Q(sqrt2), N in 2..12", false, {}, 0};
  rnd::Engine g(31337);
  const PrimeBasis sub = PrimeBasis::make({2});
  const PrimeBasis full = PrimeBasis::make({2, 3});
  const FieldElement s3 = sqrt_of_integer(full, 3);
  int good = 0;
  std::size_t tightest = 99;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 11);
    const double density = 0.1 + 0.8 * (t % 5) / 4.0;
    FieldMatrix a = rnd::matrix(g, sub, n, n, 3, density);
    FieldMatrix c = add(embed(a, full), FieldMatrix::identity(full, n, s3));
    const std::size_t rk = rank(c);
    const std::size_t need = (n + 1) / 2;
    const unsigned k = charpoly_multiplicity_bound(a, 3);
    if (rk >= need && n - rk <= k && k <= n / 2) ++good;
    tightest = std::min(tightest, rk - need);
  }
  r.passed = good == 100;
  r.detail = std::to_string(good) + "/100, smallest margin rank-ceil(N/2) = " + std::to_string(tightest);
  return r;
}

inline CriterionResult sigma_suite() {
  CriterionResult r{6, "sigma families ell=1..8: anticommute, square to I, Clifford identity", false, {}, 0};
  rnd::Engine g(8);
  bool ok = true;
  for (unsigned ell = 1; ell <= 8; ++ell) {
    auto fam = build_sigma(ell);
    auto chk = verify_sigma(fam);
    std::vector<Rational> a;
    for (unsigned j = 0; j < ell; ++j) a.push_back(rnd::rational(g, 9));
    bool clifford = verify_clifford_square(fam, a);
    ok = ok && chk.ok() && clifford && fam.size() == (std::size_t{1} << (2 * ((ell + 1) / 2)));
    r.detail += std::to_string(ell) + ":" + (chk.ok() && clifford ? "ok " : "FAIL ");
  }
  r.passed = ok;
  return r;
}

inline CriterionResult extension_suite() {
  CriterionResult r{7, "extension certificate on P_6, d=2, B_1 = all-ones", false, {}, 0};
  auto t0 = detail::Clock::now();
  auto w = matrix_P(6).matrix;
  auto rep = extension_certify(canonical_decomposition(w, 2), w, 3, true);
  const double dt = detail::since(t0);
  r.passed = rep.diag_blocks_unit && rep.offdiag_in_subfield && rep.sigma_size == 16 && rep.rank_C == 120 &&
             rep.rank_C_exact && *rep.rank_C_exact >= 120 && rep.required == 8 && rep.conclusion && dt < 600.0;
  r.detail = "rank(C) >= " + std::to_string(rep.rank_C) + " (exact " +
             (rep.rank_C_exact ? std::to_string(*rep.rank_C_exact) : std::string("-")) + "), k_max=" +
             std::to_string(rep.k_max) + ", k*4 >= 8 " + (rep.conclusion ? "holds" : "fails") + " in " +
             detail::fmt_seconds(dt);
  return r;
}

inline CriterionResult decomposition_suite() {
  CriterionResult r{8, "PSD vectors -> d^2 entrywise squares, 100 random instances", false, {}, 0};
  rnd::Engine g(25);
  int good = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + t % 3;
    const std::size_t m = static_cast<std::size_t>(rnd::uniform(g, 1, 6));
    const std::size_t n = static_cast<std::size_t>(rnd::uniform(g, 1, 6));
    auto vecs = [&](std::size_t count) {
      std::vector<std::vector<std::vector<Rational>>> out(count);
      for (auto& row : out) {
        row.resize(d);
        for (auto& v : row) {
          for (std::size_t k = 0; k < d; ++k) v.push_back(rnd::rational(g, 5));
        }
      }
      return out;
    };
    auto alphas = vecs(m);
    auto betas = vecs(n);
    auto parts = decomposition_from_psd_vectors(alphas, betas);
    // Direct Tr(E_x F_y) with E_x = sum_k a a^T and F_y = sum_k b b^T.
    RationalMatrix direct(m, n, Rational(0));
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        Rational tr = 0;
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            Rational e = 0, f = 0;
            for (const auto& a : alphas[x]) e += a[i] * a[j];
            for (const auto& b : betas[y]) f += b[j] * b[i];
            tr += e * f;
          }
        }
        direct(x, y) = tr;
      }
    }
    RationalMatrix sum(m, n, Rational(0));
    bool ranks_ok = parts.size() == d * d;
    for (const auto& nm : parts) {
      ranks_ok = ranks_ok && rank(nm) <= d;
      for (std::size_t k = 0; k < sum.data().size(); ++k) sum.data()[k] += nm.data()[k] * nm.data()[k];
    }
    if (ranks_ok && sum == direct) ++good;
  }
  r.passed = good == 100;
  r.detail = std::to_string(good) + "/100 exact";
  return r;
}

inline CriterionResult nonneg_suite() {
  CriterionResult r{9, "rank+(F_n) <= C(n,2) by explicit factorization, n=1..8", false, {}, 0};
  const std::size_t expected[] = {0, 1, 3, 6, 10, 15, 21, 28};
  bool ok = true;
  for (unsigned n = 1; n <= 8; ++n) {
    auto f = nonneg_factorization_F(n);
    bool v = f.terms.size() == expected[n - 1] && verify_nonneg_factorization(f, cor_slack(SlackVariant::F, n));
    ok = ok && v;
    r.detail += std::to_string(f.terms.size()) + (v ? " " : "! ");
  }
  r.passed = ok;
  return r;
}

inline CriterionResult slack_suite() {
  CriterionResult r{10, "slack identity and nonnegativity, all 4^n pairs, n=1..6", false, {}, 0};
  bool ok = true;
  for (unsigned n = 1; n <= 6; ++n) ok = ok && slack_verify(n);
  r.passed = ok;
  r.detail = ok ? "all pairs pass" : "mismatch found";
  return r;
}

inline CriterionResult identity_suite() {
  CriterionResult r{11, "A_n o A_n = B_n, rank(A_n) <= n+1, sqrt(IP_n) = IP_n, n=1..6", false, {}, 0};
  bool ok = true;
  for (unsigned n = 1; n <= 6; ++n) {
    auto a = lowrank_A(n);
    bool sq = hadamard(a, a) == cor_slack(SlackVariant::B, n);
    std::size_t rk = rank(a);
    auto ip = ip_matrix(n);
    bool ip_ok = entrywise_sqrt(ip) == FieldMatrix::lift(ip);
    ok = ok && sq && rk <= n + 1 && ip_ok;
    r.detail += "rank(A_" + std::to_string(n) + ")=" + std::to_string(rk) + " ";
  }
  r.passed = ok;
  return r;
}

inline CriterionResult size_bound_suite() {
  CriterionResult r{12, "ceil(C(n,p+1)/2) >= 3^(n/3-1), 4 <= n <= 45", false, {}, 0};
  int good = 0;
  for (unsigned n = 4; n <= 45; ++n) {
    if (size_bound_check(n).exp_holds) ++good;
  }
  r.passed = good == 42;
  r.detail = std::to_string(good) + "/42; n=45 half size " + size_bound_check(45).half_size.get_str() +
             " vs floor " + size_bound_check(45).exp_lower_floor.get_str();
  return r;
}

inline CriterionResult field_suite() {
  CriterionResult r{13, "a * a^-1 = 1 and text round trip, 1000 random elements, t <= 4", false, {}, 0};
  rnd::Engine g(13);
  const std::vector<std::vector<long long>> bases{{}, {2}, {2, 3}, {3, 5, 7}, {2, 3, 5, 7}, {5, 11, 13, 17}};
  int inv_ok = 0, trip_ok = 0;
  for (int t = 0; t < 1000; ++t) {
    const PrimeBasis b = PrimeBasis::make(bases[static_cast<std::size_t>(t) % bases.size()]);
    auto a = rnd::nonzero_element(g, b, 1000000);
    if (a * a.inverse() == FieldElement(b, 1)) ++inv_ok;
    const std::string s = a.to_string();
    if (parse_field_element(b, s).to_string() == s) ++trip_ok;
  }
  // Matrix files round trip as well.
  const PrimeBasis b23 = PrimeBasis::make({2, 3});
  auto m = rnd::matrix(g, b23, 5, 4, 50);
  const std::string text = format_matrix(m);
  const bool file_ok = format_matrix(parse_matrix(text)) == text && parse_matrix(text) == m;
  r.passed = inv_ok == 1000 && trip_ok == 1000 && file_ok;
  r.detail = "inverse " + std::to_string(inv_ok) + "/1000, round trip " + std::to_string(trip_ok) + "/1000" +
             (file_ok ? ", matrix file ok" : ", matrix file FAILED");
  return r;
}

inline std::vector<std::function<CriterionResult()>> criteria() {
  return {certificate_reproduction, sign_sampling, oracle_agreement, multiplicity_suite, rank_suite,
          sigma_suite, extension_suite, decomposition_suite, nonneg_suite, slack_suite,
          identity_suite, size_bound_suite, field_suite};
}

/// Runs every criterion, reporting exceptions as failures.
inline std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& c : criteria()) {
    ++id;
    auto t0 = detail::Clock::now();
    CriterionResult res;
    try {
      res = c();
    } catch (const std::exception& e) {
      res = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
    }
    res.seconds = detail::since(t0);
    if (on_result) on_result(res);
    out.push_back(std::move(res));
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  char head[16];
  std::snprintf(head, sizeof head, "[%2d] ", r.id);
  return std::string(r.passed ? "PASS " : "FAIL ") + head + r.name + " | " + r.detail + " (" +
         detail::fmt_seconds(r.seconds) + ")";
}

}  // namespace quadrank::acceptance
