#pragma once

#include <string>
#include <vector>

#include "quadrank/matrix.hpp"
#include "quadrank/numfield.hpp"

namespace qt {

using namespace quadrank;

inline PrimeBasis basis(std::vector<long long> p) { return PrimeBasis::make(std::move(p)); }

inline FieldElement el(const PrimeBasis& b, const std::string& text) { return parse_field_element(b, text); }

inline RationalMatrix rat(std::size_t r, std::size_t c, std::vector<long> v) {
  std::vector<Rational> d(v.begin(), v.end());
  return RationalMatrix(r, c, std::move(d));
}

inline FieldMatrix fmat(const PrimeBasis& b, std::size_t r, std::size_t c, std::vector<std::string> v) {
  std::vector<FieldElement> d;
  for (const auto& s : v) d.push_back(el(b, s));
  return FieldMatrix(b, r, c, std::move(d));
}

inline double value(const FieldElement& a) { return std::stod(approximate(a, 20)); }

}  // namespace qt
