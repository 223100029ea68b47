#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "quadrank/numfield.hpp"

namespace quadrank {

/// Univariate polynomial over a multiquadratic field, lowest degree first.
class FieldPolynomial {
 public:
  explicit FieldPolynomial(PrimeBasis basis) : basis_(basis) {}
  FieldPolynomial(PrimeBasis basis, std::vector<FieldElement> coeffs) : basis_(basis), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
      if (!(c.basis() == basis_)) throw Error(Errc::BasisMismatch, "polynomial coefficient over foreign basis");
    }
    trim();
  }

  static FieldPolynomial from_rationals(PrimeBasis basis, const std::vector<Rational>& coeffs) {
    std::vector<FieldElement> c;
    for (const auto& q : coeffs) c.emplace_back(basis, q);
    return FieldPolynomial(basis, std::move(c));
  }

  /// x^2 - p
  static FieldPolynomial x_squared_minus(PrimeBasis basis, unsigned long p) {
    return from_rationals(basis, {Rational(-static_cast<long>(p)), 0, 1});
  }

  const PrimeBasis& basis() const { return basis_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const FieldElement& leading() const { return coeffs_.back(); }

  FieldElement coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : FieldElement(basis_); }

  friend FieldPolynomial operator+(const FieldPolynomial& a, const FieldPolynomial& b) {
    check(a, b);
    std::vector<FieldElement> c(std::max(a.coeffs_.size(), b.coeffs_.size()), FieldElement(a.basis_));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return FieldPolynomial(a.basis_, std::move(c));
  }

  friend FieldPolynomial operator-(const FieldPolynomial& a, const FieldPolynomial& b) {
    check(a, b);
    std::vector<FieldElement> c(std::max(a.coeffs_.size(), b.coeffs_.size()), FieldElement(a.basis_));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return FieldPolynomial(a.basis_, std::move(c));
  }

  friend FieldPolynomial operator*(const FieldPolynomial& a, const FieldPolynomial& b) {
    check(a, b);
    if (a.is_zero() || b.is_zero()) return FieldPolynomial(a.basis_);
    std::vector<FieldElement> c(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElement(a.basis_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return FieldPolynomial(a.basis_, std::move(c));
  }

  friend bool operator==(const FieldPolynomial& a, const FieldPolynomial& b) {
    return a.basis_ == b.basis_ && a.coeffs_ == b.coeffs_;
  }

  /// Horner evaluation; `x` must live in the coefficient field.
  FieldElement evaluate(const FieldElement& x) const {
    FieldElement acc(basis_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  FieldPolynomial embedded(const PrimeBasis& larger) const {
    std::vector<FieldElement> c;
    for (const auto& e : coeffs_) c.push_back(embed(e, larger));
    return FieldPolynomial(larger, std::move(c));
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeffs_[i].to_string() + ")";
      if (i > 0) s += i == 1 ? "*x" : "*x^" + std::to_string(i);
    }
    return s;
  }

 private:
  static void check(const FieldPolynomial& a, const FieldPolynomial& b) {
    if (!(a.basis_ == b.basis_)) throw Error(Errc::BasisMismatch, "polynomials over different fields");
  }
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  PrimeBasis basis_;
  std::vector<FieldElement> coeffs_;
};

struct PolyDivision {
  FieldPolynomial quotient;
  FieldPolynomial remainder;
};

/// f = g*q + r with deg r < deg g.
inline PolyDivision poly_divmod(const FieldPolynomial& f, const FieldPolynomial& g) {
  if (g.is_zero()) throw Error(Errc::DivisionByZeroPolynomial, "division by the zero polynomial");
  if (!(f.basis() == g.basis())) throw Error(Errc::BasisMismatch, "polynomials over different fields");
  const auto& basis = f.basis();
  std::vector<FieldElement> rem = f.coeffs();
  const long dg = g.degree();
  const long df = f.degree();
  std::vector<FieldElement> quot(df >= dg ? static_cast<std::size_t>(df - dg + 1) : 0, FieldElement(basis));
  const FieldElement lead_inv = g.leading().inverse();
  for (long i = df; i >= dg; --i) {
    const FieldElement& top = rem[static_cast<std::size_t>(i)];
    if (top.is_zero()) continue;
    FieldElement q = top * lead_inv;
    for (long j = 0; j <= dg; ++j) {
      rem[static_cast<std::size_t>(i - dg + j)] -= q * g.coeffs()[static_cast<std::size_t>(j)];
    }
    quot[static_cast<std::size_t>(i - dg)] = std::move(q);
  }
  return {FieldPolynomial(basis, std::move(quot)), FieldPolynomial(basis, std::move(rem))};
}

inline constexpr unsigned kInfiniteMultiplicity = std::numeric_limits<unsigned>::max();

/// Largest k with (x^2 - p)^k dividing q over q's field. Since sqrt(p) is not
/// in that field, this is the multiplicity of both +sqrt(p) and -sqrt(p) as
/// roots of q. Returns kInfiniteMultiplicity for q = 0.
inline unsigned sqrt_root_multiplicity(const FieldPolynomial& q, unsigned long p) {
  if (!is_prime(p)) throw Error(Errc::NonPrimeGenerator, std::to_string(p) + " is not prime");
  if (q.basis().contains(p)) {
    throw Error(Errc::PrimeInsideField, "sqrt(" + std::to_string(p) + ") already lies in the coefficient field");
  }
  if (q.is_zero()) return kInfiniteMultiplicity;
  const FieldPolynomial m = FieldPolynomial::x_squared_minus(q.basis(), p);
  unsigned k = 0;
  FieldPolynomial cur = q;
  while (cur.degree() >= 2) {
    auto [quot, rem] = poly_divmod(cur, m);
    if (!rem.is_zero()) break;
    cur = std::move(quot);
    ++k;
  }
  return k;
}

}  // namespace quadrank
