#pragma once

// Seeded generators for property suites.

#include <random>
#include <vector>

#include "quadrank/matrix.hpp"
#include "quadrank/numfield.hpp"
#include "quadrank/polynomial.hpp"

namespace quadrank::rnd {

using Engine = std::mt19937_64;

inline long uniform(Engine& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

/// num/den with |num| <= bound, 1 <= den <= bound.
inline Rational rational(Engine& g, long bound) {
  Rational q(uniform(g, -bound, bound), uniform(g, 1, bound));
  q.canonicalize();
  return q;
}

/// Random element using each support with probability `density`.
inline FieldElement element(Engine& g, const PrimeBasis& basis, long bound, double density = 0.6) {
  std::vector<Term> terms;
  std::bernoulli_distribution use(density);
  const SupportMask count = SupportMask{1} << basis.size();
  for (SupportMask m = 0; m < count; ++m) {
    if (use(g)) terms.push_back({m, rational(g, bound)});
  }
  return FieldElement::from_terms(basis, std::move(terms));
}

inline FieldElement nonzero_element(Engine& g, const PrimeBasis& basis, long bound) {
  for (;;) {
    auto e = element(g, basis, bound);
    if (!e.is_zero()) return e;
  }
}

inline FieldPolynomial polynomial(Engine& g, const PrimeBasis& basis, long degree, long bound) {
  std::vector<FieldElement> c;
  for (long i = 0; i <= degree; ++i) c.push_back(element(g, basis, bound));
  if (c.back().is_zero()) c.back() = FieldElement(basis, 1);
  return FieldPolynomial(basis, std::move(c));
}

/// Dense matrix with roughly `density` nonzero entries.
inline FieldMatrix matrix(Engine& g, const PrimeBasis& basis, std::size_t rows, std::size_t cols, long bound,
                          double density = 0.7) {
  FieldMatrix m(basis, rows, cols);
  std::bernoulli_distribution use(density);
  for (auto& e : m.data()) {
    if (use(g)) e = element(g, basis, bound);
  }
  return m;
}

inline RationalMatrix rational_matrix(Engine& g, std::size_t rows, std::size_t cols, long bound) {
  RationalMatrix m(rows, cols);
  for (auto& e : m.data()) e = rational(g, bound);
  return m;
}

inline SignMatrix signs(Engine& g, std::size_t rows, std::size_t cols) {
  SignMatrix s(rows, cols);
  std::bernoulli_distribution flip(0.5);
  for (auto& v : s.data()) v = flip(g) ? -1 : 1;
  return s;
}

}  // namespace quadrank::rnd
