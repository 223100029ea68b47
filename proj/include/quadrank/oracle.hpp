#pragma once

// Independent cross-checks: exhaustive square-root-rank search, the explicit
// nonnegative factorization of F_n, rank-one PSD factorizations from a sign
// witness, and the aggregate bounds table.

#include <optional>
#include <string>
#include <vector>

#include "quadrank/certify.hpp"
#include "quadrank/gen.hpp"
#include "quadrank/matrix.hpp"
#include "quadrank/parallel.hpp"

namespace quadrank {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

struct BruteForceResult {
  std::size_t min_rank = 0;
  SignMatrix witness;
  std::uint64_t classes_enumerated = 0;
  bool exhausted = false;
};

/// Thrown when the reduced sign space is larger than the budget.
class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(unsigned free_signs)
      : Error(Errc::BudgetExceeded, "search needs 2^" + std::to_string(free_signs) + " sign patterns"),
        free_signs_(free_signs) {}
  unsigned free_signs() const { return free_signs_; }
  std::string required() const {
    return free_signs_ < 64 ? std::to_string(std::uint64_t{1} << free_signs_) : "2^" + std::to_string(free_signs_);
  }

 private:
  unsigned free_signs_;
};

namespace detail {

/// Positions whose signs are free once row 0's nonzeros (via column flips) and
/// each later row's first nonzero (via row flips) are fixed to +.
inline std::vector<std::size_t> free_sign_positions(const FieldMatrix& root, bool reduce) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < root.rows(); ++i) {
    bool first = true;
    for (std::size_t j = 0; j < root.cols(); ++j) {
      if (root(i, j).is_zero()) continue;
      const bool fixed = reduce && (i == 0 || first);
      first = false;
      if (!fixed) free.push_back(i * root.cols() + j);
    }
  }
  return free;
}

/// Lexicographic order on sign matrices with + before -.
inline bool sign_less(const SignMatrix& a, const SignMatrix& b) {
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    if (a.data()[k] != b.data()[k]) return a.data()[k] > b.data()[k];
  }
  return false;
}

}  // namespace detail

/// Minimum rank of S o sqrt(W) over sign patterns S. Patterns are walked in
/// Gray-code order per worker range; the result (minimum rank and the
/// lexicographically least minimizing witness) does not depend on the split.
inline BruteForceResult sqrt_rank_bruteforce(const RationalMatrix& w, std::uint64_t budget = kDefaultBudget,
                                             bool reduce = true) {
  const FieldMatrix root = entrywise_sqrt(w);
  const auto free = detail::free_sign_positions(root, reduce);
  const unsigned bits = static_cast<unsigned>(free.size());
  if (bits >= 63 || (std::uint64_t{1} << bits) > budget) throw BudgetExceededError(bits);
  const std::uint64_t total = std::uint64_t{1} << bits;

  struct Best {
    std::size_t rank = std::numeric_limits<std::size_t>::max();
    SignMatrix witness;
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(worker_count(), total));
  std::vector<Best> best(workers);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  parallel_for(
      0, workers,
      [&](std::size_t w_id) {
        const std::uint64_t lo = w_id * chunk;
        const std::uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) return;
        SignMatrix signs(root.rows(), root.cols());
        for (std::uint64_t g = lo; g < hi; ++g) {
          const std::uint64_t gray = g ^ (g >> 1);
          for (unsigned b = 0; b < bits; ++b) signs.data()[free[b]] = ((gray >> b) & 1u) ? -1 : 1;
          const std::size_t r = rank(apply_signs(root, signs));
          Best& mine = best[w_id];
          if (r < mine.rank || (r == mine.rank && detail::sign_less(signs, mine.witness))) {
            mine.rank = r;
            mine.witness = signs;
          }
        }
      },
      1);
  Best overall;
  for (auto& b : best) {
    if (b.witness.rows() == 0) continue;
    if (b.rank < overall.rank || (b.rank == overall.rank && detail::sign_less(b.witness, overall.witness))) {
      overall = b;
    }
  }
  return {overall.rank, overall.witness, total, true};
}

/// Rows of '+'/'-', with '.' where the entry is zero.
inline std::string format_witness(const SignMatrix& s, const RationalMatrix& w) {
  std::string out;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) out += w(i, j) == 0 ? '.' : (s(i, j) > 0 ? '+' : '-');
    out += '\n';
  }
  return out;
}

struct NonnegTerm {
  std::vector<Rational> u;
  std::vector<Rational> v;
};

struct NonnegFactorization {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<NonnegTerm> terms;
};

/// Builds F_n = sum of C(n,2) nonnegative rank-one terms through
/// F_{m+1} = [[F_m, F_m], [F_m, F_m + D_m]] with D_m = [2 x^T y].
inline NonnegFactorization nonneg_factorization_F(unsigned n) {
  if (n < 1 || n > 10) throw Error(Errc::DimensionCap, "nonneg_factorization_F supports 1 <= n <= 10");
  NonnegFactorization f{2, 2, {}};  // F_1 = 0
  for (unsigned m = 1; m < n; ++m) {
    const std::size_t half = std::size_t{1} << m;
    std::vector<NonnegTerm> next;
    for (auto& t : f.terms) {
      NonnegTerm lifted;
      lifted.u = t.u;
      lifted.u.insert(lifted.u.end(), t.u.begin(), t.u.end());
      lifted.v = t.v;
      lifted.v.insert(lifted.v.end(), t.v.begin(), t.v.end());
      next.push_back(std::move(lifted));
    }
    // x_i of a length-m string indexed lexicographically is bit (m-1-i).
    for (unsigned i = 0; i < m; ++i) {
      NonnegTerm t{std::vector<Rational>(2 * half, Rational(0)), std::vector<Rational>(2 * half, Rational(0))};
      for (std::size_t x = 0; x < half; ++x) {
        if ((x >> (m - 1 - i)) & 1u) {
          t.u[half + x] = 2;
          t.v[half + x] = 1;
        }
      }
      next.push_back(std::move(t));
    }
    f.terms = std::move(next);
    f.rows = f.cols = 2 * half;
  }
  return f;
}

inline bool verify_nonneg_factorization(const NonnegFactorization& f, const RationalMatrix& target) {
  if (f.rows != target.rows() || f.cols != target.cols()) return false;
  RationalMatrix sum(f.rows, f.cols, Rational(0));
  for (const auto& t : f.terms) {
    if (t.u.size() != f.rows || t.v.size() != f.cols) return false;
    for (const auto& x : t.u)
      if (x < 0) return false;
    for (const auto& x : t.v)
      if (x < 0) return false;
    for (std::size_t i = 0; i < f.rows; ++i) {
      if (t.u[i] == 0) continue;
      for (std::size_t j = 0; j < f.cols; ++j) sum(i, j) += t.u[i] * t.v[j];
    }
  }
  return sum == target;
}

struct RankOnePsdFactorization {
  std::size_t r = 0;
  std::vector<std::vector<Rational>> row_vectors;
  std::vector<std::vector<Rational>> col_vectors;
};

/// B = U V^T with r = rank(B) columns; E_i = u_i u_i^T and F_j = v_j v_j^T
/// then give a size-r rank-one PSD factorization of B o B.
inline RankOnePsdFactorization rank_one_psd_from_sqrt(const FieldMatrix& bsigned) {
  if (!bsigned.is_rational()) throw Error(Errc::NonRationalEntries, "sign witness matrix must be rational");
  const auto rf = rank_factorization(bsigned.to_rational());
  RankOnePsdFactorization out;
  out.r = rf.left.cols();
  for (std::size_t i = 0; i < rf.left.rows(); ++i) {
    auto row = rf.left.row(i);
    out.row_vectors.emplace_back(row.begin(), row.end());
  }
  for (std::size_t j = 0; j < rf.right.cols(); ++j) {
    std::vector<Rational> v;
    for (std::size_t k = 0; k < out.r; ++k) v.push_back(rf.right(k, j));
    out.col_vectors.push_back(std::move(v));
  }
  return out;
}

/// <u_i, v_j>^2 == A(i,j) for every entry.
inline bool verify_rank_one_psd(const RankOnePsdFactorization& f, const RationalMatrix& a) {
  if (f.row_vectors.size() != a.rows() || f.col_vectors.size() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational dot = 0;
      for (std::size_t k = 0; k < f.r; ++k) dot += f.row_vectors[i][k] * f.col_vectors[j][k];
      if (dot * dot != a(i, j)) return false;
    }
  }
  return true;
}

struct Evidence {
  std::optional<SqrtRankCertificate> certificate;
  std::optional<SignMatrix> witness;
  std::optional<NonnegFactorization> factorization;
};

struct BoundsReport {
  std::size_t rank = 0;
  std::size_t prank_lower = 0;
  std::optional<std::size_t> rootrank_upper;
  std::optional<std::size_t> rootrank_lower;
  std::optional<std::size_t> rank_plus_upper;
};

inline std::size_t ceil_sqrt(std::size_t v) {
  std::size_t r = 0;
  while (r * r < v) ++r;
  return r;
}

inline BoundsReport bounds_report(const RationalMatrix& w, const Evidence& ev = {}) {
  for (const auto& q : w.data()) {
    if (q < 0) throw Error(Errc::NegativeEntry, "bounds need a nonnegative matrix");
  }
  BoundsReport r;
  r.rank = rank(w);
  r.prank_lower = ceil_sqrt(r.rank);
  if (ev.certificate) {
    if (ev.certificate->N != w.rows()) throw Error(Errc::InconsistentEvidence, "certificate is for another matrix");
    r.rootrank_lower = ev.certificate->bound;
  }
  if (ev.witness) r.rootrank_upper = rank(apply_signs(entrywise_sqrt(w), *ev.witness));
  if (ev.factorization) {
    if (!verify_nonneg_factorization(*ev.factorization, w)) {
      throw Error(Errc::InconsistentEvidence, "nonnegative factorization does not reproduce the matrix");
    }
    r.rank_plus_upper = ev.factorization->terms.size();
  }
  if (r.rootrank_upper && r.prank_lower > *r.rootrank_upper) {
    throw Error(Errc::InconsistentEvidence, "prank lower bound exceeds square root rank upper bound");
  }
  if (r.rootrank_upper && r.rootrank_lower && *r.rootrank_lower > *r.rootrank_upper) {
    throw Error(Errc::InconsistentEvidence, "certified square root rank exceeds a witnessed upper bound");
  }
  if (r.rank_plus_upper && r.prank_lower > *r.rank_plus_upper) {
    throw Error(Errc::InconsistentEvidence, "prank lower bound exceeds nonnegative rank upper bound");
  }
  return r;
}

inline std::string format_bounds(const BoundsReport& r, ReportFormat fmt) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  if (fmt == ReportFormat::Kv) {
    std::string s = "rank: " + std::to_string(r.rank) + "\nprank_lower: " + std::to_string(r.prank_lower) + "\n";
    s += "rootrank_lower: " + opt(r.rootrank_lower) + "\nrootrank_upper: " + opt(r.rootrank_upper) + "\n";
    s += "rank_plus_upper: " + opt(r.rank_plus_upper) + "\n";
    return s;
  }
  std::string s = "quantity          value  source\n";
  auto line = [&](const std::string& name, const std::string& v, const std::string& src) {
    s += name + std::string(18 - name.size(), ' ') + std::string(v.size() < 5 ? 5 - v.size() : 0, ' ') + v + "  " +
         src + "\n";
  };
  line("rank", std::to_string(r.rank), "exact elimination over Q");
  line("prank >=", std::to_string(r.prank_lower), "ceil(sqrt(rank))");
  line("rootrank >=", opt(r.rootrank_lower), "structural certificate");
  line("rootrank <=", opt(r.rootrank_upper), "sign witness rank");
  line("rank+ <=", opt(r.rank_plus_upper), "explicit nonnegative factorization");
  if (r.rootrank_upper) s += "chain: prank >= " + std::to_string(r.prank_lower) + " and prank <= rootrank <= " + opt(r.rootrank_upper) + "\n";
  if (r.rank_plus_upper) s += "chain: prank <= rank+ <= " + opt(r.rank_plus_upper) + "\n";
  return s;
}

}  // namespace quadrank
