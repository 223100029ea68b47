#pragma once

// Sign-independent square-root-rank certificates.
//
// If every diagonal entry of an integer matrix W is p(p-1) for a prime p and
// every off-diagonal sqrt(v/(p-1)) lies in F = Q(sqrt q : q prime, q < p),
// then for any signing B of sqrt(W), scaling row i by +-1/sqrt(p-1) gives
// C = sqrt(p) I + A with A over F. Since sqrt(p) is not in F, -sqrt(p) has
// the same multiplicity as +sqrt(p) in A's characteristic polynomial, so the
// nullity of C is at most floor(N/2) and rank(B) >= ceil(N/2) for every sign
// choice at once.

#include <optional>
#include <string>
#include <vector>

#include "quadrank/gen.hpp"
#include "quadrank/matrix.hpp"
#include "quadrank/polynomial.hpp"
#include "quadrank/sigma.hpp"

namespace quadrank {

struct CertificateChecks {
  bool diag_constant = false;
  bool diag_value = false;
  bool offdiag_subfield_membership = false;
};

struct SqrtRankCertificate {
  std::size_t N = 0;
  unsigned long p = 0;
  Integer diag_value;   // p(p-1)
  PrimeBasis subfield;  // primes below p that the off-diagonal entries need
  std::size_t bound = 0;
  CertificateChecks checks;
  bool sign_independent = false;
};

namespace detail {

inline Integer integer_entry(const Rational& q, std::size_t i, std::size_t j) {
  if (q.get_den() != 1) {
    throw Error(Errc::NonIntegerEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + q.get_str());
  }
  if (q < 0) {
    throw Error(Errc::NegativeEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + q.get_str());
  }
  return q.get_num();
}

/// The prime p with p(p-1) = v, if any.
inline std::optional<unsigned long> prime_form(const Integer& v) {
  if (v < 2) return std::nullopt;
  Integer disc = 1 + 4 * v;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  if (root * root != disc || !root.fits_ulong_p()) return std::nullopt;
  unsigned long p = (root.get_ui() + 1) / 2;
  if (!is_prime(p)) return std::nullopt;
  return p;
}

}  // namespace detail

inline SqrtRankCertificate structural_certificate(const RationalMatrix& w) {
  if (!w.is_square() || w.rows() == 0) {
    throw Error(Errc::NotSquare, std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  }
  const std::size_t n = w.rows();
  SqrtRankCertificate cert;
  cert.N = n;
  const Integer d0 = detail::integer_entry(w(0, 0), 0, 0);
  auto p = detail::prime_form(d0);
  if (!p) throw Error(Errc::DiagonalNotPrimeForm, "diagonal value " + d0.get_str() + " is not p(p-1) for a prime p");
  for (std::size_t i = 1; i < n; ++i) {
    if (detail::integer_entry(w(i, i), i, i) != d0) {
      throw Error(Errc::DiagonalNotConstant, "diagonal entry " + std::to_string(i) + " = " + w(i, i).get_str() +
                                                 " differs from " + d0.get_str());
    }
  }
  cert.p = *p;
  cert.diag_value = d0;
  cert.checks.diag_constant = true;
  cert.checks.diag_value = true;
  std::vector<unsigned long> needed;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Integer v = detail::integer_entry(w(i, j), i, j);
      if (v == 0) continue;
      for (auto q : squarefree_split(v * (cert.p - 1)).second) {
        if (q >= cert.p) {
          throw Error(Errc::OffdiagEscapesSubfield, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                                        v.get_str() + " needs sqrt(" + std::to_string(q) +
                                                        ") with " + std::to_string(q) + " >= p = " +
                                                        std::to_string(cert.p));
        }
        needed.push_back(q);
      }
    }
  }
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  cert.subfield = PrimeBasis::make(needed);
  cert.checks.offdiag_subfield_membership = true;
  cert.bound = (n + 1) / 2;
  cert.sign_independent = true;
  return cert;
}

/// Left-multiplies by diag(+-1/sqrt(p-1)) so every diagonal entry becomes +sqrt(p).
inline FieldMatrix scale_to_form(const FieldMatrix& bsigned, unsigned long p) {
  if (!bsigned.is_square()) throw Error(Errc::NotSquare, "scale_to_form needs a square matrix");
  const auto& basis = bsigned.basis();
  if (!basis.contains(p)) throw Error(Errc::BadDiagonal, "sqrt(" + std::to_string(p) + ") not in the matrix field");
  const FieldElement target = sqrt_of_integer(basis, Integer(p) * (p - 1));
  const FieldElement inv_root = sqrt_of_integer(basis, Integer(p - 1)).inverse();
  std::vector<FieldElement> scale;
  scale.reserve(bsigned.rows());
  for (std::size_t i = 0; i < bsigned.rows(); ++i) {
    const auto& d = bsigned(i, i);
    if (d == target) {
      scale.push_back(inv_root);
    } else if (d == -target) {
      scale.push_back(-inv_root);
    } else {
      throw Error(Errc::BadDiagonal, "diagonal entry " + std::to_string(i) + " = " + d.to_string() +
                                         " is not +-sqrt(" + target.to_string() + "^2)");
    }
  }
  return diag_scale(bsigned, scale, Side::Left);
}

/// Exact rank of the scaled form of S o sqrt(W).
inline std::size_t rank_crosscheck(const RationalMatrix& w, const SignMatrix& s, unsigned long p) {
  const auto cert = structural_certificate(w);
  if (cert.p != p) {
    throw Error(Errc::BadDiagonal, "certificate prime " + std::to_string(cert.p) + " != " + std::to_string(p));
  }
  return rank(scale_to_form(apply_signs(entrywise_sqrt(w), s), p));
}

/// Splits C = sqrt(p) I + A and returns A re-keyed over the field without sqrt(p).
inline FieldMatrix strip_sqrt_p_diagonal(const FieldMatrix& c, unsigned long p) {
  const auto& basis = c.basis();
  FieldMatrix a = c;
  const FieldElement root = sqrt_of_integer(basis, Integer(p));
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= root;
  std::vector<unsigned long> rest;
  for (auto q : basis.primes())
    if (q != p) rest.push_back(q);
  return rebase(a, PrimeBasis::make(rest));
}

/// k = multiplicity of x^2 - p in det(xI - A); bounds the nullity of sqrt(p) I + A.
inline unsigned charpoly_multiplicity_bound(const FieldMatrix& a, unsigned long p) {
  const unsigned k = sqrt_root_multiplicity(charpoly(a), p);
  if (k > a.rows() / 2) {
    throw Error(Errc::InconsistentEvidence, "multiplicity " + std::to_string(k) + " exceeds half the dimension");
  }
  return k;
}

/// Checks (x^T y - 1)(x^T y - 2) = Tr((x x^T - 3 diag(x)) y y^T) + 2 >= 0 for all x, y in {0,1}^n.
inline bool slack_verify(unsigned n) {
  if (n < 1 || n > 10) throw Error(Errc::DimensionCap, "slack_verify supports 1 <= n <= 10");
  const std::size_t size = std::size_t{1} << n;
  auto bit = [n](std::size_t v, unsigned k) -> long { return static_cast<long>((v >> (n - 1 - k)) & 1u); };
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      long s = 0;
      for (unsigned k = 0; k < n; ++k) s += bit(x, k) * bit(y, k);
      const long lhs = (s - 1) * (s - 2);
      long tr = 0;
      for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b) {
          const long face = bit(x, a) * bit(x, b) - (a == b ? 3 * bit(x, a) : 0);
          tr += face * bit(y, b) * bit(y, a);
        }
      }
      const long rhs = tr + 2;
      if (lhs != rhs || lhs < 0) return false;
    }
  }
  return true;
}

/// Rank-one pieces of a PSD factorization given by its eigenvectors:
/// alphas[x][k] and betas[y][k] are d vectors of dimension d per row/column.
/// Returns N_{k1,k2}(x,y) = <alpha_x^k1, beta_y^k2> at index k1*d + k2.
inline std::vector<RationalMatrix> decomposition_from_psd_vectors(
    const std::vector<std::vector<std::vector<Rational>>>& alphas,
    const std::vector<std::vector<std::vector<Rational>>>& betas) {
  if (alphas.empty() || betas.empty()) throw Error(Errc::DimensionMismatch, "no rows or columns");
  const std::size_t d = alphas[0].size();
  auto check = [d](const auto& side, const char* what) {
    for (const auto& vecs : side) {
      if (vecs.size() != d) throw Error(Errc::DimensionMismatch, std::string(what) + " lists differ in length");
      for (const auto& v : vecs) {
        if (v.size() != d) throw Error(Errc::DimensionMismatch, std::string(what) + " vector dimension != d");
      }
    }
  };
  check(alphas, "alpha");
  check(betas, "beta");
  std::vector<RationalMatrix> out;
  for (std::size_t k1 = 0; k1 < d; ++k1) {
    for (std::size_t k2 = 0; k2 < d; ++k2) {
      RationalMatrix nm(alphas.size(), betas.size());
      for (std::size_t x = 0; x < alphas.size(); ++x) {
        for (std::size_t y = 0; y < betas.size(); ++y) {
          Rational dot = 0;
          for (std::size_t t = 0; t < d; ++t) dot += alphas[x][k1][t] * betas[y][k2][t];
          nm(x, y) = dot;
        }
      }
      out.push_back(std::move(nm));
    }
  }
  return out;
}

struct ExtensionReport {
  std::optional<unsigned> n;
  unsigned long p = 0;
  std::size_t N = 0;
  std::size_t d = 0;
  std::size_t sigma_size = 0;
  std::size_t k_max = 0;
  std::size_t rank_C = 0;  // certified lower bound ceil(N * sigma_size / 2)
  std::optional<std::size_t> rank_C_exact;
  bool diag_blocks_unit = false;
  bool offdiag_in_subfield = false;
  std::size_t required = 0;  // ceil(N/2)
  bool conclusion = false;   // k_max * d^2 >= ceil(N/2)
};

/// B_1 = all ones, the remaining d^2 - 1 matrices zero.
inline std::vector<RationalMatrix> canonical_decomposition(const RationalMatrix& w, std::size_t d) {
  std::vector<RationalMatrix> bs(d * d, RationalMatrix(w.rows(), w.cols(), Rational(0)));
  bs[0] = RationalMatrix(w.rows(), w.cols(), Rational(1));
  return bs;
}

/// Certifies rank(C) >= ceil(N s / 2) for C = sum_j (B_j o sqrt W) (x) sigma_j,
/// and hence max_j rank(B_j o sqrt W) * d^2 >= ceil(N/2).
inline ExtensionReport extension_certify(const std::vector<RationalMatrix>& bs, const RationalMatrix& w,
                                         unsigned long p, bool exact_rank = false) {
  const auto cert = structural_certificate(w);
  if (cert.p != p) {
    throw Error(Errc::BadDiagonal, "certificate prime " + std::to_string(cert.p) + " != " + std::to_string(p));
  }
  std::size_t d = 0;
  while ((d + 1) * (d + 1) <= bs.size()) ++d;
  if (d == 0 || d * d != bs.size()) {
    throw Error(Errc::DimensionMismatch, std::to_string(bs.size()) + " matrices is not a positive square count");
  }
  const std::size_t n = w.rows();
  for (const auto& b : bs) {
    if (b.rows() != n || b.cols() != n) throw Error(Errc::DimensionMismatch, "B_j shape differs from W");
  }
  // sum_j (B_j o sqrt W)^2 = W  <=>  sum_j B_j^2 = 1 on the support of W
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (w(x, y) == 0) continue;
      Rational s = 0;
      for (const auto& b : bs) s += b(x, y) * b(x, y);
      if (s != 1) {
        throw Error(Errc::DecompositionInvalid, "entry (" + std::to_string(x) + "," + std::to_string(y) +
                                                    "): sum of B_j^2 = " + s.get_str());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (const auto& b : bs) s += b(i, i) * b(i, i);
    if (s != 1) throw Error(Errc::DiagonalBlockNotUnit, "block " + std::to_string(i) + ": " + s.get_str());
  }

  ExtensionReport rep;
  rep.p = p;
  rep.N = n;
  rep.d = d;
  const SigmaFamily fam = build_sigma(static_cast<unsigned>(d * d));
  const std::size_t s = fam.size();
  rep.sigma_size = s;

  const FieldMatrix root = entrywise_sqrt(w);
  const PrimeBasis& basis = root.basis();
  std::vector<FieldMatrix> sig;
  for (const auto& m : fam.matrices) sig.push_back(to_field(m, basis));

  std::vector<FieldMatrix> parts;
  for (const auto& b : bs) {
    parts.push_back(hadamard(FieldMatrix::lift(b, basis), root));
    rep.k_max = std::max(rep.k_max, rank(parts.back()));
  }

  // Block (i,k) of C is sum_j parts_j(i,k) sigma_j.
  auto c_block = [&](std::size_t i, std::size_t k) {
    FieldMatrix blk(basis, s, s);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const auto& a = parts[j](i, k);
      if (a.is_zero()) continue;
      for (std::size_t e = 0; e < blk.data().size(); ++e) {
        const int v = fam.matrices[j].data()[e];
        if (v != 0) blk.data()[e] += a * Rational(v);
      }
    }
    return blk;
  };

  const FieldElement inv_root = sqrt_of_integer(basis, Integer(p - 1)).inverse();
  const FieldElement sqrt_p = sqrt_of_integer(basis, Integer(p));
  const int p_index = basis.index_of(p);
  const SupportMask p_bit = SupportMask{1} << p_index;
  rep.diag_blocks_unit = true;
  rep.offdiag_in_subfield = true;
  std::vector<std::vector<FieldMatrix>> grid(n, std::vector<FieldMatrix>(n));
  for (std::size_t i = 0; i < n; ++i) {
    FieldMatrix di(basis, s, s);
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (bs[j](i, i) == 0) continue;
      for (std::size_t e = 0; e < di.data().size(); ++e) {
        const int v = fam.matrices[j].data()[e];
        if (v != 0) di.data()[e] += FieldElement(basis, bs[j](i, i) * v);
      }
    }
    di = diag_scale(di, std::vector<FieldElement>(s, inv_root), Side::Left);
    for (std::size_t k = 0; k < n; ++k) {
      grid[i][k] = c_block(i, k);
      const FieldMatrix dc = multiply(di, grid[i][k]);
      if (i == k) {
        rep.diag_blocks_unit = rep.diag_blocks_unit && dc == FieldMatrix::identity(basis, s, sqrt_p);
      } else {
        for (const auto& e : dc.data()) {
          if (e.used_generators() & p_bit) rep.offdiag_in_subfield = false;
        }
      }
    }
  }
  if (!rep.diag_blocks_unit || !rep.offdiag_in_subfield) {
    throw Error(Errc::InconsistentEvidence, "scaled extension matrix is not of the form sqrt(p) I + A");
  }
  rep.rank_C = (n * s + 1) / 2;
  if (exact_rank) rep.rank_C_exact = rank(block_assemble(grid));
  rep.required = (n + 1) / 2;
  rep.conclusion = rep.k_max * d * d >= rep.required;
  if (rep.rank_C_exact && (*rep.rank_C_exact < rep.rank_C || *rep.rank_C_exact > rep.k_max * d * d * s)) {
    throw Error(Errc::InconsistentEvidence, "exact rank(C) outside the certified window");
  }
  return rep;
}

enum class ReportFormat { Text, Kv };

inline std::string format_certificate(const SqrtRankCertificate& c, ReportFormat fmt,
                                      const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  const std::string sub = c.subfield.is_rationals() ? "" : c.subfield.to_string();
  auto yes = [](bool b) { return b ? std::string("ok") : std::string("FAILED"); };
  std::string s;
  if (fmt == ReportFormat::Kv) {
    s += "N: " + std::to_string(c.N) + "\n";
    s += "p: " + std::to_string(c.p) + "\n";
    s += "bound: " + std::to_string(c.bound) + "\n";
    s += "subfield: " + sub + "\n";
    s += "check.diag_constant: " + yes(c.checks.diag_constant) + "\n";
    s += "check.diag_value: " + yes(c.checks.diag_value) + "\n";
    s += "check.offdiag_subfield_membership: " + yes(c.checks.offdiag_subfield_membership) + "\n";
    s += std::string("sign_independent: ") + (c.sign_independent ? "true" : "false") + "\n";
    for (const auto& [k, v] : extra) s += k + ": " + v + "\n";
    s += "status: CERTIFIED\n";
    return s;
  }
  s += "square root rank certificate\n";
  s += "  N        = " + std::to_string(c.N) + "\n";
  s += "  p        = " + std::to_string(c.p) + "\n";
  s += "  bound    = ceil(N/2) = " + std::to_string(c.bound) + "\n";
  s += "  subfield = Q(" + (sub.empty() ? std::string() : "sqrt of " + sub) + ")\n";
  s += "  [" + yes(c.checks.diag_constant) + "] diagonal constant\n";
  s += "  [" + yes(c.checks.diag_value) + "] diagonal = " + c.diag_value.get_str() + " = p(p-1)\n";
  s += "  [" + yes(c.checks.offdiag_subfield_membership) + "] off-diagonal sqrt(v/(p-1)) in subfield\n";
  for (const auto& [k, v] : extra) s += "  " + k + ": " + v + "\n";
  s += "CERTIFIED rootrank >= " + std::to_string(c.bound) + " (all sign patterns)\n";
  return s;
}

inline std::string format_extension(const ExtensionReport& r, ReportFormat fmt) {
  const std::string d2 = std::to_string(r.d * r.d);
  std::string s;
  if (fmt == ReportFormat::Kv) {
    if (r.n) s += "n: " + std::to_string(*r.n) + "\n";
    s += "p: " + std::to_string(r.p) + "\nN: " + std::to_string(r.N) + "\nd: " + std::to_string(r.d) + "\n";
    s += "sigma_size: " + std::to_string(r.sigma_size) + "\n";
    s += "k_max: " + std::to_string(r.k_max) + "\n";
    s += "rank_C_lower: " + std::to_string(r.rank_C) + "\n";
    if (r.rank_C_exact) s += "rank_C_exact: " + std::to_string(*r.rank_C_exact) + "\n";
    s += std::string("diag_blocks_unit: ") + (r.diag_blocks_unit ? "true" : "false") + "\n";
    s += std::string("offdiag_in_subfield: ") + (r.offdiag_in_subfield ? "true" : "false") + "\n";
    s += "required: " + std::to_string(r.required) + "\n";
    s += std::string("conclusion: ") + (r.conclusion ? "holds" : "fails") + "\n";
    return s;
  }
  s += "extension certificate\n";
  s += "  N = " + std::to_string(r.N) + ", p = " + std::to_string(r.p) + ", d = " + std::to_string(r.d) +
       ", sigma size = " + std::to_string(r.sigma_size) + "\n";
  s += "  diagonal blocks of DC = sqrt(" + std::to_string(r.p) + ")*I: " + (r.diag_blocks_unit ? "ok" : "FAILED") + "\n";
  s += std::string("  off-diagonal blocks in subfield: ") + (r.offdiag_in_subfield ? "ok" : "FAILED") + "\n";
  s += "  k_max = max_j rank(B_j o sqrt W) = " + std::to_string(r.k_max) + "\n";
  if (r.rank_C_exact) s += "  exact rank(C) = " + std::to_string(*r.rank_C_exact) + "\n";
  s += "rank(C) >= " + std::to_string(r.rank_C) + ", conclude k*" + d2 + " >= " + std::to_string(r.required) + "\n";
  return s;
}

}  // namespace quadrank
