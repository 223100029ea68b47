#pragma once

// Dense exact matrices: rationals, multiquadratic field elements and sign
// patterns, with the elimination-based rank, characteristic polynomial and
// assembly operations used by the certificates.

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quadrank/numfield.hpp"
#include "quadrank/parallel.hpp"
#include "quadrank/polynomial.hpp"

namespace quadrank {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(Errc::DimensionMismatch, "entry count != rows*cols");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 protected:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;

/// Matrix of +1/-1 entries.
class SignMatrix : public DenseMatrix<std::int8_t> {
 public:
  SignMatrix() = default;
  SignMatrix(std::size_t rows, std::size_t cols) : DenseMatrix(rows, cols, std::int8_t{1}) {}
  SignMatrix(std::size_t rows, std::size_t cols, std::vector<std::int8_t> data)
      : DenseMatrix(rows, cols, std::move(data)) {
    for (auto s : data_) {
      if (s != 1 && s != -1) throw Error(Errc::DimensionMismatch, "sign entries must be +1 or -1");
    }
  }
};

class FieldMatrix : public DenseMatrix<FieldElement> {
 public:
  FieldMatrix() = default;
  FieldMatrix(PrimeBasis basis, std::size_t rows, std::size_t cols)
      : DenseMatrix(rows, cols, FieldElement(basis)), basis_(basis) {}
  FieldMatrix(PrimeBasis basis, std::size_t rows, std::size_t cols, std::vector<FieldElement> data)
      : DenseMatrix(rows, cols, std::move(data)), basis_(basis) {
    for (const auto& e : data_) {
      if (!(e.basis() == basis_)) throw Error(Errc::BasisMismatch, "matrix entry over foreign basis");
    }
  }

  /// Rational matrix viewed over `basis`.
  static FieldMatrix lift(const RationalMatrix& m, PrimeBasis basis = PrimeBasis()) {
    FieldMatrix out(basis, m.rows(), m.cols());
    for (std::size_t k = 0; k < m.data().size(); ++k) out.data_[k] = FieldElement(basis, m.data()[k]);
    return out;
  }

  static FieldMatrix identity(PrimeBasis basis, std::size_t n, const FieldElement& diag) {
    FieldMatrix out(basis, n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = diag;
    return out;
  }

  const PrimeBasis& basis() const { return basis_; }

  bool is_rational() const {
    return std::all_of(data_.begin(), data_.end(), [](const FieldElement& e) { return e.is_rational(); });
  }

  RationalMatrix to_rational() const {
    RationalMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (!data_[k].is_rational()) throw Error(Errc::NonRationalEntries, "entry " + data_[k].to_string());
      out.data()[k] = data_[k].rational_value();
    }
    return out;
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.basis_ == b.basis_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  PrimeBasis basis_;
};

namespace detail {

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline Rational inverse(const Rational& x) { return Rational(1) / x; }
inline FieldElement inverse(const FieldElement& x) { return x.inverse(); }

/// Scale a row so its coefficients become coprime integers.
inline void normalize_row(std::span<Rational> row) {
  Integer g = 0, l = 1;
  for (const auto& x : row) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  if (g == 0 || (g == 1 && l == 1)) return;
  Rational s(l, g);
  s.canonicalize();
  for (auto& x : row) {
    if (x != 0) x *= s;
  }
}

inline void normalize_row(std::span<FieldElement> row) {
  Integer g = 0, l = 1;
  for (const auto& x : row) {
    for (const auto& t : x.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  }
  if (g == 0 || (g == 1 && l == 1)) return;
  Rational s(l, g);
  s.canonicalize();
  for (auto& x : row) {
    if (!x.is_zero()) x = x * s;
  }
}

/// Gaussian elimination in place on a rows x cols row-major array. The pivot
/// is the first nonzero entry scanning down the column; rows below the pivot
/// are reduced independently (optionally in parallel). With `reduced` the
/// result is the reduced row echelon form. Returns the pivot columns.
template <class T>
std::vector<std::size_t> eliminate(std::vector<T>& a, std::size_t rows, std::size_t cols, bool reduced) {
  auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * cols + j]; };
  auto row_span = [&](std::size_t i) { return std::span<T>(a.data() + i * cols, cols); };
  if (!reduced) {
    for (std::size_t i = 0; i < rows; ++i) normalize_row(row_span(i));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && is_zero(at(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    }
    const T inv = inverse(at(r, c));
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j < cols; ++j) {
      if (!is_zero(at(r, j))) {
        at(r, j) = at(r, j) * inv;
        nz.push_back(j);
      }
    }
    auto reduce = [&](std::size_t i) {
      if (i == r || is_zero(at(i, c))) return;
      const T f = at(i, c);
      for (std::size_t j : nz) at(i, j) = at(i, j) - f * at(r, j);
      if (!reduced) normalize_row(row_span(i));
    };
    parallel_for(reduced ? 0 : r + 1, rows, reduce, 16);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Exact rank over Q.
inline std::size_t rank(const RationalMatrix& m) {
  std::vector<Rational> a = m.data();
  return detail::eliminate(a, m.rows(), m.cols(), false).size();
}

/// Exact rank over the matrix's field.
inline std::size_t rank(const FieldMatrix& m) {
  std::vector<FieldElement> a = m.data();
  return detail::eliminate(a, m.rows(), m.cols(), false).size();
}

struct RankFactorization {
  RationalMatrix left;   // rows x r
  RationalMatrix right;  // r x cols
};

/// M = left * right with r = rank(M), using pivot columns and the reduced echelon form.
inline RankFactorization rank_factorization(const RationalMatrix& m) {
  std::vector<Rational> a = m.data();
  auto pivots = detail::eliminate(a, m.rows(), m.cols(), true);
  const std::size_t r = pivots.size();
  RankFactorization f{RationalMatrix(m.rows(), r), RationalMatrix(r, m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < r; ++k) f.left(i, k) = m(i, pivots[k]);
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < m.cols(); ++j) f.right(k, j) = a[k * m.cols() + j];
  }
  return f;
}

inline void check_same_basis(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.basis() == b.basis())) {
    throw Error(Errc::BasisMismatch, "(" + a.basis().to_string() + ") vs (" + b.basis().to_string() + ")");
  }
}

inline FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_basis(a, b);
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "inner dimensions differ");
  FieldMatrix out(a.basis(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "inner dimensions differ");
  RationalMatrix out(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

inline FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_basis(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "shapes differ");
  FieldMatrix out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] += b.data()[k];
  return out;
}

template <class T>
DenseMatrix<T> hadamard(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "shapes differ");
  DenseMatrix<T> out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] = a.data()[k] * b.data()[k];
  return out;
}

inline FieldMatrix hadamard(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_basis(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "shapes differ");
  FieldMatrix out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] = a.data()[k] * b.data()[k];
  return out;
}

inline FieldMatrix rebase(const FieldMatrix& m, const PrimeBasis& target) {
  FieldMatrix out(target, m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = rebase(m.data()[k], target);
  return out;
}

inline FieldMatrix embed(const FieldMatrix& m, const PrimeBasis& larger) {
  if (!m.basis().is_subfield_of(larger)) {
    throw Error(Errc::NotASubfield, "(" + m.basis().to_string() + ") not contained in (" + larger.to_string() + ")");
  }
  return rebase(m, larger);
}

/// Default cap on the dimension accepted by charpoly.
inline constexpr std::size_t kCharpolyCap = 16;

/// det(xI - M) by the Faddeev-LeVerrier recurrence.
inline FieldPolynomial charpoly(const FieldMatrix& m, std::size_t cap = kCharpolyCap) {
  if (!m.is_square()) throw Error(Errc::NotSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const std::size_t n = m.rows();
  if (n > cap) throw Error(Errc::DimensionCapExceeded, "charpoly dimension " + std::to_string(n) + " > " + std::to_string(cap));
  const auto& basis = m.basis();
  std::vector<FieldElement> c(n + 1, FieldElement(basis));
  c[n] = FieldElement(basis, 1);
  FieldMatrix mk(basis, n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    FieldMatrix next = multiply(m, mk);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    FieldMatrix am = multiply(m, next);
    FieldElement tr(basis);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = tr * Rational(-1, static_cast<long>(k));
    mk = std::move(next);
  }
  return FieldPolynomial(basis, std::move(c));
}

/// Entrywise positive square root over the smallest basis that contains it.
inline FieldMatrix entrywise_sqrt(const RationalMatrix& w) {
  std::vector<unsigned long> primes;
  for (const auto& q : w.data()) {
    if (q < 0) throw Error(Errc::NegativeEntry, "entry " + q.get_str());
    for (auto p : sqrt_primes(q)) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  const PrimeBasis basis = PrimeBasis::make(primes);
  FieldMatrix out(basis, w.rows(), w.cols());
  for (std::size_t k = 0; k < w.data().size(); ++k) out.data()[k] = sqrt_of_rational(basis, w.data()[k]);
  return out;
}

inline FieldMatrix apply_signs(const FieldMatrix& m, const SignMatrix& s) {
  if (m.rows() != s.rows() || m.cols() != s.cols()) throw Error(Errc::DimensionMismatch, "sign pattern shape");
  FieldMatrix out = m;
  for (std::size_t k = 0; k < out.data().size(); ++k) {
    if (s.data()[k] < 0) out.data()[k] = -out.data()[k];
  }
  return out;
}

inline FieldMatrix kronecker(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_basis(a, b);
  FieldMatrix out(a.basis(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

enum class Side { Left, Right };

/// Left: row i scaled by d[i]. Right: column j scaled by d[j].
inline FieldMatrix diag_scale(const FieldMatrix& m, const std::vector<FieldElement>& d, Side side) {
  const std::size_t want = side == Side::Left ? m.rows() : m.cols();
  if (d.size() != want) {
    throw Error(Errc::LengthMismatch, std::to_string(d.size()) + " scalars for dimension " + std::to_string(want));
  }
  FieldMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j) * d[side == Side::Left ? i : j];
    }
  }
  return out;
}

/// Dense matrix from a grid of conformal blocks.
inline FieldMatrix block_assemble(const std::vector<std::vector<FieldMatrix>>& grid) {
  if (grid.empty() || grid[0].empty()) throw Error(Errc::RaggedBlocks, "empty block grid");
  const std::size_t br = grid.size(), bc = grid[0].size();
  const PrimeBasis basis = grid[0][0].basis();
  std::vector<std::size_t> heights(br), widths(bc);
  for (std::size_t i = 0; i < br; ++i) {
    if (grid[i].size() != bc) throw Error(Errc::RaggedBlocks, "block row " + std::to_string(i) + " length differs");
    heights[i] = grid[i][0].rows();
  }
  for (std::size_t j = 0; j < bc; ++j) widths[j] = grid[0][j].cols();
  for (std::size_t i = 0; i < br; ++i) {
    for (std::size_t j = 0; j < bc; ++j) {
      check_same_basis(grid[0][0], grid[i][j]);
      if (grid[i][j].rows() != heights[i] || grid[i][j].cols() != widths[j]) {
        throw Error(Errc::RaggedBlocks, "block (" + std::to_string(i) + "," + std::to_string(j) + ") not conformal");
      }
    }
  }
  const std::size_t rows = std::accumulate(heights.begin(), heights.end(), std::size_t{0});
  const std::size_t cols = std::accumulate(widths.begin(), widths.end(), std::size_t{0});
  FieldMatrix out(basis, rows, cols);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < br; ++i) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < bc; ++j) {
      const auto& b = grid[i][j];
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(r0 + k, c0 + l) = b(k, l);
      }
      c0 += widths[j];
    }
    r0 += heights[i];
  }
  return out;
}

inline FieldMatrix principal_submatrix(const FieldMatrix& m, const std::vector<std::size_t>& idx) {
  FieldMatrix out(m.basis(), idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  }
  return out;
}

inline RationalMatrix principal_submatrix(const RationalMatrix& m, const std::vector<std::size_t>& idx) {
  RationalMatrix out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  }
  return out;
}

}  // namespace quadrank
