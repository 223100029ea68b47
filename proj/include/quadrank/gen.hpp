#pragma once

// Generators for the correlation-polytope slack matrices and related
// families. Rows and columns are indexed by bit strings x in {0,1}^n in
// lexicographic order: index i has x_1 as its most significant bit, so
// x^T y = popcount(i & j).

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "quadrank/arith.hpp"
#include "quadrank/error.hpp"
#include "quadrank/matrix.hpp"

namespace quadrank {

inline constexpr unsigned kMaxCubeDimension = 14;
inline constexpr std::size_t kMaxPrimeSliceSize = 2048;

/// A point of {0,1}^n; orders like its string.
struct BitIndex {
  unsigned n = 0;
  std::uint64_t value = 0;

  unsigned weight() const { return static_cast<unsigned>(std::popcount(value)); }
  unsigned overlap(const BitIndex& o) const { return static_cast<unsigned>(std::popcount(value & o.value)); }
  std::string to_string() const {
    std::string s;
    for (unsigned k = n; k-- > 0;) s += ((value >> k) & 1u) ? '1' : '0';
    return s;
  }
  friend auto operator<=>(const BitIndex&, const BitIndex&) = default;
};

enum class SlackVariant { B, M, F };

inline long slack_value(SlackVariant v, long s) {
  switch (v) {
    case SlackVariant::B: return (s - 1) * (s - 1);
    case SlackVariant::M: return (s - 1) * (s - 2);
    case SlackVariant::F: return s * (s - 1);
  }
  return 0;
}

namespace detail {
inline void check_cube(unsigned n) {
  if (n < 1 || n > kMaxCubeDimension) {
    throw Error(Errc::DimensionCap, "n=" + std::to_string(n) + " outside 1.." + std::to_string(kMaxCubeDimension));
  }
}

template <class F>
RationalMatrix cube_matrix(unsigned n, F&& entry) {
  check_cube(n);
  const std::size_t size = std::size_t{1} << n;
  RationalMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) m(i, j) = entry(static_cast<long>(std::popcount(i & j)));
  }
  return m;
}
}  // namespace detail

/// B: (x^T y - 1)^2, M: (x^T y - 1)(x^T y - 2), F: x^T y (x^T y - 1).
inline RationalMatrix cor_slack(SlackVariant v, unsigned n) {
  return detail::cube_matrix(n, [v](long s) { return slack_value(v, s); });
}

/// x^T y mod 2.
inline RationalMatrix ip_matrix(unsigned n) {
  return detail::cube_matrix(n, [](long s) { return s % 2; });
}

/// x^T y - 1.
inline RationalMatrix lowrank_A(unsigned n) {
  return detail::cube_matrix(n, [](long s) { return s - 1; });
}

/// Prime closest to n/2; ties go to the smaller prime.
inline unsigned long nearest_prime(unsigned long n) {
  if (n < 4) throw Error(Errc::DomainTooSmall, "nearest prime needs n >= 4, got " + std::to_string(n));
  // Compare |2p - n| in integers. A prime exists in [n/2, n] so scanning
  // outward from n/2 terminates; downward candidates are checked first.
  for (unsigned long dist = 0;; ++dist) {
    // 2p = n - dist or n + dist
    if (dist <= n && (n - dist) % 2 == 0 && is_prime((n - dist) / 2)) return (n - dist) / 2;
    if ((n + dist) % 2 == 0 && is_prime((n + dist) / 2)) return (n + dist) / 2;
  }
}

/// Weight-w strings of length n in lexicographic order.
inline std::vector<BitIndex> weight_slice(unsigned n, unsigned w) {
  std::vector<BitIndex> out;
  if (w > n) return out;
  if (w == 0) return {{n, 0}};
  std::uint64_t v = (std::uint64_t{1} << w) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    out.push_back({n, v});
    // next integer with the same popcount (Gosper's hack)
    std::uint64_t c = v & (~v + 1);
    std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

struct PrimeSlice {
  RationalMatrix matrix;
  unsigned long p = 0;
  std::vector<BitIndex> index;
};

/// The restriction of corM(n) to strings of Hamming weight p+1, p = nearest_prime(n).
inline PrimeSlice matrix_P(unsigned n) {
  const unsigned long p = nearest_prime(n);
  if (p + 1 > n) {
    throw Error(Errc::WeightExceedsN, "weight p+1=" + std::to_string(p + 1) + " exceeds n=" + std::to_string(n));
  }
  if (n > 62 || binomial(n, p + 1) > kMaxPrimeSliceSize) {
    throw Error(Errc::DimensionCap, "P_" + std::to_string(n) + " has more than " +
                                        std::to_string(kMaxPrimeSliceSize) + " rows");
  }
  PrimeSlice out;
  out.p = p;
  out.index = weight_slice(n, static_cast<unsigned>(p + 1));
  const std::size_t size = out.index.size();
  out.matrix = RationalMatrix(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      out.matrix(i, j) = slack_value(SlackVariant::M, out.index[i].overlap(out.index[j]));
    }
  }
  return out;
}

/// Q(i,j) = n_i + n_j - 1 for strictly increasing n_i with every 2 n_i - 1 prime.
inline RationalMatrix fawzi_Q(const std::vector<long>& ns) {
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i > 0 && ns[i] <= ns[i - 1]) throw Error(Errc::NotIncreasing, "index " + std::to_string(i));
    long v = 2 * ns[i] - 1;
    if (v < 2 || !is_prime(static_cast<std::uint64_t>(v))) {
      throw Error(Errc::TwoNMinusOneComposite,
                  "index " + std::to_string(i) + ": 2*" + std::to_string(ns[i]) + "-1 = " + std::to_string(v));
    }
  }
  RationalMatrix q(ns.size(), ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t j = 0; j < ns.size(); ++j) q(i, j) = ns[i] + ns[j] - 1;
  }
  return q;
}

struct SizeBound {
  unsigned n = 0;
  unsigned long p = 0;
  Integer size;                // C(n, p+1)
  Integer bertrand_lower;      // C(n, ceil(n/3))
  Integer half_size;           // ceil(size / 2)
  Integer exp_lower_floor;     // floor(3^(n/3 - 1))
  bool bertrand_holds = false;  // size >= bertrand_lower
  bool exp_holds = false;       // half_size >= 3^(n/3 - 1), decided exactly
};

/// Size of P_n against the Bertrand-range binomial and the 3^(n/3-1) bound.
/// The exponential comparison is made exactly as half_size^3 >= 3^(n-3).
inline SizeBound size_bound_check(unsigned n) {
  SizeBound b;
  b.n = n;
  b.p = nearest_prime(n);
  b.size = binomial(n, b.p + 1);
  b.bertrand_lower = binomial(n, (n + 2) / 3);
  b.half_size = (b.size + 1) / 2;
  b.bertrand_holds = b.size >= b.bertrand_lower;
  Integer lhs = b.half_size * b.half_size * b.half_size;
  // n >= 4 so n - 3 >= 1
  Integer rhs = ipow(3, n - 3);
  b.exp_holds = lhs >= rhs;
  mpz_root(b.exp_lower_floor.get_mpz_t(), rhs.get_mpz_t(), 3);
  return b;
}

enum class Family { corB, corM, corF, P, IP, fawziQ, lowrankA };

struct MatrixSpec {
  Family family = Family::corM;
  unsigned n = 0;
  std::vector<long> aux;  // fawziQ integers

  std::string to_string() const {
    static constexpr const char* names[] = {"corB", "corM", "corF", "P", "IP", "fawziQ", "lowrankA"};
    std::string s = std::string(names[static_cast<int>(family)]) + ":";
    if (family == Family::fawziQ) {
      for (std::size_t i = 0; i < aux.size(); ++i) s += (i ? "," : "") + std::to_string(aux[i]);
    } else {
      s += std::to_string(n);
    }
    return s;
  }
};

/// Parses "corM:5", "P:10", "fawziQ:2,3,4", "IP:3", "corB:4", "corF:6", "lowrankA:4".
inline MatrixSpec parse_spec(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::SpecError, "expected <family>:<args>, got '" + text + "'");
  const std::string fam = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  auto parse_long = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789-") != std::string::npos || s.size() > 12) {
      throw Error(Errc::SpecError, "bad integer '" + s + "' in '" + text + "'");
    }
    return std::stol(s);
  };
  MatrixSpec spec;
  if (fam == "fawziQ") {
    spec.family = Family::fawziQ;
    std::size_t start = 0;
    for (;;) {
      auto comma = args.find(',', start);
      spec.aux.push_back(parse_long(args.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return spec;
  }
  if (fam == "corB") spec.family = Family::corB;
  else if (fam == "corM") spec.family = Family::corM;
  else if (fam == "corF") spec.family = Family::corF;
  else if (fam == "P") spec.family = Family::P;
  else if (fam == "IP") spec.family = Family::IP;
  else if (fam == "lowrankA") spec.family = Family::lowrankA;
  else throw Error(Errc::SpecError, "unknown family '" + fam + "'");
  long n = parse_long(args);
  if (n < 0) throw Error(Errc::SpecError, "negative dimension in '" + text + "'");
  spec.n = static_cast<unsigned>(std::min<long>(n, 1L << 20));
  return spec;
}

inline RationalMatrix generate(const MatrixSpec& spec) {
  switch (spec.family) {
    case Family::corB: return cor_slack(SlackVariant::B, spec.n);
    case Family::corM: return cor_slack(SlackVariant::M, spec.n);
    case Family::corF: return cor_slack(SlackVariant::F, spec.n);
    case Family::P: return matrix_P(spec.n).matrix;
    case Family::IP: return ip_matrix(spec.n);
    case Family::fawziQ: return fawzi_Q(spec.aux);
    case Family::lowrankA: return lowrank_A(spec.n);
  }
  throw Error(Errc::SpecError, "unknown family");
}

}  // namespace quadrank
