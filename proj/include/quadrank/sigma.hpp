#pragma once

// Pairwise anticommuting families built from real 4x4 analogues of the Pauli
// matrices:  sigma_{2j+1} = Z^(x)j (x) Y (x) I^(x)(m-j-1)
//            sigma_{2j+2} = Z^(x)j (x) X (x) I^(x)(m-j-1),   j = 0..m-1,
// truncated to the first ell members, m = ceil(ell/2).

#include <cstdint>
#include <string>
#include <vector>

#include "quadrank/matrix.hpp"

namespace quadrank {

using IntMatrix = DenseMatrix<int>;

inline constexpr unsigned kMaxSigmaCount = 10;

struct SigmaFamily {
  unsigned ell = 0;
  unsigned m = 0;
  std::vector<IntMatrix> matrices;

  std::size_t size() const { return matrices.empty() ? 0 : matrices[0].rows(); }
};

namespace pauli {

inline IntMatrix X() { return IntMatrix(4, 4, {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0}); }
inline IntMatrix Y() { return IntMatrix(4, 4, {0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0}); }
inline IntMatrix Z() { return IntMatrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1}); }
inline IntMatrix I4() { return IntMatrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}); }

}  // namespace pauli

inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

inline SigmaFamily build_sigma(unsigned ell) {
  if (ell < 1 || ell > kMaxSigmaCount) {
    throw Error(Errc::CapExceeded, "sigma family size " + std::to_string(ell) + " outside 1.." +
                                       std::to_string(kMaxSigmaCount));
  }
  SigmaFamily fam;
  fam.ell = ell;
  fam.m = (ell + 1) / 2;
  for (unsigned j = 0; j < fam.m && fam.matrices.size() < ell; ++j) {
    for (const IntMatrix& middle : {pauli::Y(), pauli::X()}) {
      if (fam.matrices.size() == ell) break;
      IntMatrix word(1, 1, 1);
      for (unsigned k = 0; k < j; ++k) word = kronecker(word, pauli::Z());
      word = kronecker(word, middle);
      for (unsigned k = j + 1; k < fam.m; ++k) word = kronecker(word, pauli::I4());
      fam.matrices.push_back(std::move(word));
    }
  }
  return fam;
}

namespace detail {

/// Nonzeros per row, for products of the very sparse sigma words.
struct SparseRows {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
};

template <class T>
SparseRows sparse(const DenseMatrix<T>& m) {
  SparseRows s{m.cols(), std::vector<std::vector<std::pair<std::size_t, Rational>>>(m.rows())};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) s.rows[i].emplace_back(j, Rational(m(i, j)));
  return s;
}

/// Dense product of sparse row representations.
inline RationalMatrix sparse_product(const SparseRows& a, const SparseRows& b) {
  RationalMatrix out(a.rows.size(), b.n, Rational(0));
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (const auto& [k, x] : a.rows[i])
      for (const auto& [j, y] : b.rows[k]) out(i, j) += x * y;
  return out;
}

inline bool is_scaled_identity(const RationalMatrix& m, const Rational& s) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? s : Rational(0))) return false;
  return true;
}

}  // namespace detail

struct SigmaCheck {
  bool entries_ok = true;
  bool anticommute_ok = true;
  bool squares_ok = true;
  bool ok() const { return entries_ok && anticommute_ok && squares_ok; }
};

/// Exhaustive check of entries in {-1,0,1}, sigma_i^2 = I and sigma_i sigma_j = -sigma_j sigma_i.
inline SigmaCheck verify_sigma(const SigmaFamily& fam) {
  SigmaCheck c;
  std::vector<detail::SparseRows> sp;
  for (const auto& m : fam.matrices) {
    for (int v : m.data()) c.entries_ok = c.entries_ok && (v >= -1 && v <= 1);
    sp.push_back(detail::sparse(m));
  }
  for (std::size_t i = 0; i < sp.size(); ++i) {
    c.squares_ok = c.squares_ok && detail::is_scaled_identity(detail::sparse_product(sp[i], sp[i]), 1);
    for (std::size_t j = i + 1; j < sp.size(); ++j) {
      RationalMatrix ab = detail::sparse_product(sp[i], sp[j]);
      RationalMatrix ba = detail::sparse_product(sp[j], sp[i]);
      for (std::size_t k = 0; k < ab.data().size(); ++k) {
        if (ab.data()[k] != -ba.data()[k]) {
          c.anticommute_ok = false;
          break;
        }
      }
    }
  }
  return c;
}

/// (sum_j a_j sigma_j)^2 == (sum_j a_j^2) I, evaluated exactly.
inline bool verify_clifford_square(const SigmaFamily& fam, const std::vector<Rational>& a) {
  if (a.size() != fam.matrices.size()) throw Error(Errc::LengthMismatch, "one coefficient per sigma required");
  const std::size_t n = fam.size();
  RationalMatrix comb(n, n, Rational(0));
  Rational norm = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    norm += a[j] * a[j];
    for (std::size_t k = 0; k < comb.data().size(); ++k) {
      if (fam.matrices[j].data()[k] != 0) comb.data()[k] += a[j] * fam.matrices[j].data()[k];
    }
  }
  auto sp = detail::sparse(comb);
  return detail::is_scaled_identity(detail::sparse_product(sp, sp), norm);
}

inline FieldMatrix to_field(const IntMatrix& m, PrimeBasis basis) {
  FieldMatrix out(basis, m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    if (m.data()[k] != 0) out.data()[k] = FieldElement(basis, m.data()[k]);
  }
  return out;
}

inline std::string format_int_matrix(const IntMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      int v = m(i, j);
      s += v > 0 ? " 1" : v < 0 ? "-1" : " 0";
      if (j + 1 < m.cols()) s += ' ';
    }
    s += '\n';
  }
  return s;
}

}  // namespace quadrank
