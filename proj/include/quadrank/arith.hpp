#pragma once

// Integer helpers shared by the field and generator code: primality,
// trial-division factorization and squarefree decomposition over GMP integers.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace quadrank {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

/// Prime factorization of n >= 1 by trial division, as prime -> exponent.
inline std::map<unsigned long, unsigned> factorize(Integer n) {
  std::map<unsigned long, unsigned> out;
  if (n < 2) return out;
  auto strip = [&](unsigned long d) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++out[d];
    }
  };
  strip(2);
  strip(3);
  for (unsigned long d = 5; Integer(d) * d <= n; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) out[n.get_ui()] += 1;
  return out;
}

/// Writes n = outer^2 * squarefree; returns {outer, primes of the squarefree part}.
inline std::pair<Integer, std::vector<unsigned long>> squarefree_split(const Integer& n) {
  Integer outer = 1;
  std::vector<unsigned long> primes;
  for (auto [p, e] : factorize(n)) {
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e / 2);
    outer *= pe;
    if (e % 2 == 1) primes.push_back(p);
  }
  return {outer, primes};
}

inline Integer squarefree_part(const Integer& n) {
  Integer s = 1;
  for (auto p : squarefree_split(n).second) s *= p;
  return s;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer ipow(unsigned long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace quadrank
