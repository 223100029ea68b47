#pragma once

// Exact arithmetic in multiquadratic real fields Q(sqrt p1, ..., sqrt pt).
//
// An element is a finite sum  sum_S c_S * sqrt(prod S)  over squarefree
// supports S of the basis primes. Supports are held internally as bitmasks
// over basis positions; the textual form keys them by the integer product.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadrank/arith.hpp"
#include "quadrank/error.hpp"

namespace quadrank {

using SupportMask = std::uint32_t;

/// Largest number of generators a basis may carry; an element has up to 2^t terms.
inline constexpr std::size_t kMaxBasisPrimes = 16;

/// Handle to an interned, strictly increasing list of primes. Copies are
/// pointer-sized and two handles compare equal iff they name the same field.
class PrimeBasis {
 public:
  PrimeBasis() : primes_(intern({})) {}

  /// Validates and canonicalizes (sorts) the generator list.
  static PrimeBasis make(std::vector<long long> primes) {
    std::vector<unsigned long> out;
    for (long long p : primes) {
      if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw Error(Errc::NonPrimeGenerator, std::to_string(p) + " is not prime");
      }
      out.push_back(static_cast<unsigned long>(p));
    }
    std::sort(out.begin(), out.end());
    if (auto it = std::adjacent_find(out.begin(), out.end()); it != out.end()) {
      throw Error(Errc::DuplicateGenerator, std::to_string(*it) + " listed twice");
    }
    if (out.size() > kMaxBasisPrimes) {
      throw Error(Errc::BasisTooLarge, std::to_string(out.size()) + " generators exceed the cap of " +
                                           std::to_string(kMaxBasisPrimes));
    }
    return PrimeBasis(intern(std::move(out)));
  }

  static PrimeBasis make(std::span<const unsigned long> primes) {
    return make(std::vector<long long>(primes.begin(), primes.end()));
  }

  std::span<const unsigned long> primes() const { return *primes_; }
  std::size_t size() const { return primes_->size(); }
  bool is_rationals() const { return primes_->empty(); }

  int index_of(unsigned long p) const {
    auto it = std::lower_bound(primes_->begin(), primes_->end(), p);
    if (it == primes_->end() || *it != p) return -1;
    return static_cast<int>(it - primes_->begin());
  }
  bool contains(unsigned long p) const { return index_of(p) >= 0; }

  bool is_subfield_of(const PrimeBasis& larger) const {
    return std::includes(larger.primes_->begin(), larger.primes_->end(), primes_->begin(), primes_->end());
  }

  /// Basis generated by this one together with `extra`.
  PrimeBasis extended(std::span<const unsigned long> extra) const {
    std::vector<long long> all(primes_->begin(), primes_->end());
    for (auto p : extra) {
      if (!contains(p) && std::find(all.begin(), all.end(), static_cast<long long>(p)) == all.end()) {
        all.push_back(static_cast<long long>(p));
      }
    }
    return make(std::move(all));
  }

  /// Basis of the primes of this basis that are strictly below `bound`.
  PrimeBasis below(unsigned long bound) const {
    std::vector<long long> keep;
    for (auto p : *primes_) {
      if (p < bound) keep.push_back(static_cast<long long>(p));
    }
    return make(std::move(keep));
  }

  Integer support_value(SupportMask m) const {
    Integer v = 1;
    for (std::size_t i = 0; m != 0; ++i, m >>= 1) {
      if (m & 1u) v *= (*primes_)[i];
    }
    return v;
  }

  std::string to_string() const {
    std::string s;
    for (auto p : *primes_) {
      if (!s.empty()) s += ' ';
      s += std::to_string(p);
    }
    return s;
  }

  friend bool operator==(const PrimeBasis& a, const PrimeBasis& b) { return a.primes_ == b.primes_; }

 private:
  explicit PrimeBasis(const std::vector<unsigned long>* p) : primes_(p) {}

  static const std::vector<unsigned long>* intern(std::vector<unsigned long> primes) {
    static std::mutex mu;
    static std::set<std::vector<unsigned long>> pool;
    std::lock_guard lock(mu);
    return &*pool.insert(std::move(primes)).first;
  }

  const std::vector<unsigned long>* primes_;
};

inline PrimeBasis field_make(std::vector<long long> primes) { return PrimeBasis::make(std::move(primes)); }

struct Term {
  SupportMask mask;
  Rational coeff;
};

class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(PrimeBasis basis) : basis_(basis) {}
  FieldElement(PrimeBasis basis, const Rational& c) : basis_(basis) {
    if (c != 0) terms_.push_back({0, c});
  }
  FieldElement(PrimeBasis basis, long c) : FieldElement(basis, Rational(c)) {}

  /// Builds an element from arbitrary (unsorted, possibly repeated or zero) terms.
  static FieldElement from_terms(PrimeBasis basis, std::vector<Term> terms) {
    FieldElement e(basis);
    const SupportMask limit = basis.size() >= 32 ? ~SupportMask{0} : ((SupportMask{1} << basis.size()) - 1);
    for (const auto& t : terms) {
      if ((t.mask & ~limit) != 0) throw Error(Errc::OutsideField, "support outside basis");
    }
    e.terms_ = std::move(terms);
    e.canonicalize();
    return e;
  }

  /// c * sqrt(product of the primes in `mask`).
  static FieldElement radical(PrimeBasis basis, SupportMask mask, const Rational& c = 1) {
    return from_terms(basis, {{mask, c}});
  }

  const PrimeBasis& basis() const { return basis_; }
  std::span<const Term> terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mask == 0); }
  Rational rational_value() const {
    if (!is_rational()) throw Error(Errc::NonRationalEntries, "element has irrational part");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
  }

  /// Union of all support masks: the generators this element actually uses.
  SupportMask used_generators() const {
    SupportMask m = 0;
    for (const auto& t : terms_) m |= t.mask;
    return m;
  }

  Rational coeff(SupportMask mask) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                               [](const Term& t, SupportMask m) { return t.mask < m; });
    return (it != terms_.end() && it->mask == mask) ? it->coeff : Rational(0);
  }

  FieldElement operator-() const {
    FieldElement r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) { return merge(a, b, false); }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return merge(a, b, true); }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return FieldElement(a.basis_);
    if (a.terms_.size() == 1 && a.terms_[0].mask == 0) return b * a.terms_[0].coeff;
    if (b.terms_.size() == 1 && b.terms_[0].mask == 0) return a * b.terms_[0].coeff;
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    Rational c;
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        c = x.coeff * y.coeff;
        // sqrt(S) * sqrt(T) = prod(S & T) * sqrt(S ^ T)
        if (SupportMask common = x.mask & y.mask; common != 0) c *= a.basis_.support_value(common);
        out.push_back({x.mask ^ y.mask, c});
      }
    }
    FieldElement r(a.basis_);
    r.terms_ = std::move(out);
    r.canonicalize();
    return r;
  }

  friend FieldElement operator*(const FieldElement& a, const Rational& s) {
    if (s == 0) return FieldElement(a.basis_);
    FieldElement r = a;
    for (auto& t : r.terms_) t.coeff *= s;
    return r;
  }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  /// Multiplicative inverse by recursive conjugation: with x, y free of the
  /// highest generator g used, (x + y sqrt g)^-1 = (x - y sqrt g) / (x^2 - g y^2).
  FieldElement inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    if (is_rational()) return FieldElement(basis_, Rational(1) / terms_[0].coeff);
    SupportMask used = used_generators();
    SupportMask top = SupportMask{1} << (31 - std::countl_zero(used));
    FieldElement conj = *this;
    for (auto& t : conj.terms_) {
      if (t.mask & top) t.coeff = -t.coeff;
    }
    FieldElement norm = *this * conj;
    if (norm.is_zero() || (norm.used_generators() & top) != 0) {
      throw Error(Errc::DivisionByZero, "conjugate norm vanished; generators not independent");
    }
    return conj * norm.inverse();
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!(a.basis_ == b.basis_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].mask != b.terms_[i].mask || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
  }

  /// Canonical text: terms ordered by support ascending, "c*sqrt(s)" with the
  /// rational term written as a bare "c"; zero is "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Integer, const Rational*>> keyed;
    for (const auto& t : terms_) keyed.emplace_back(basis_.support_value(t.mask), &t.coeff);
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::string s;
    for (const auto& [sup, c] : keyed) {
      if (!s.empty()) s += " + ";
      s += c->get_str();
      if (sup != 1) s += "*sqrt(" + sup.get_str() + ")";
    }
    return s;
  }

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.basis_ == b.basis_)) {
      throw Error(Errc::BasisMismatch, "(" + a.basis_.to_string() + ") vs (" + b.basis_.to_string() + ")");
    }
  }

  static FieldElement merge(const FieldElement& a, const FieldElement& b, bool subtract) {
    check_same(a, b);
    FieldElement r(a.basis_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->mask < j->mask)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->mask < i->mask) {
        r.terms_.push_back({j->mask, subtract ? Rational(-j->coeff) : j->coeff});
        ++j;
      } else {
        Rational c = subtract ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
        if (c != 0) r.terms_.push_back({i->mask, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.mask < y.mask; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mask == t.mask) {
        out.back().coeff += t.coeff;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(out);
  }

  PrimeBasis basis_;
  std::vector<Term> terms_;
};

inline FieldElement invert(const FieldElement& a) { return a.inverse(); }

/// m * sqrt(s) for n = m^2 * s with s squarefree.
inline FieldElement sqrt_of_integer(const PrimeBasis& basis, const Integer& n) {
  if (n < 0) throw Error(Errc::NegativeEntry, "square root of negative integer " + n.get_str());
  if (n == 0) return FieldElement(basis);
  auto [outer, primes] = squarefree_split(n);
  SupportMask mask = 0;
  std::vector<unsigned long> missing;
  for (auto p : primes) {
    int idx = basis.index_of(p);
    if (idx < 0) {
      missing.push_back(p);
    } else {
      mask |= SupportMask{1} << idx;
    }
  }
  if (!missing.empty()) {
    std::string names;
    for (auto p : missing) names += (names.empty() ? "" : " ") + std::to_string(p);
    throw OutsideFieldError(missing, "sqrt(" + n.get_str() + ") needs primes {" + names + "}");
  }
  return FieldElement::radical(basis, mask, Rational(outer));
}

/// sqrt(a/b) = sqrt(a*b) / b for a nonnegative rational in lowest terms.
inline FieldElement sqrt_of_rational(const PrimeBasis& basis, const Rational& q) {
  if (q < 0) throw Error(Errc::NegativeEntry, "square root of negative rational " + q.get_str());
  Integer prod = q.get_num() * q.get_den();
  return sqrt_of_integer(basis, prod) * Rational(Integer(1), q.get_den());
}

/// Primes needed to hold sqrt(q) exactly.
inline std::vector<unsigned long> sqrt_primes(const Rational& q) {
  Integer prod = q.get_num() * q.get_den();
  if (prod < 0) prod = -prod;
  if (prod == 0) return {};
  return squarefree_split(prod).second;
}

inline bool is_in_subfield(const FieldElement& a, const PrimeBasis& sub) {
  const auto& primes = a.basis().primes();
  SupportMask used = a.used_generators();
  for (std::size_t i = 0; used != 0; ++i, used >>= 1) {
    if ((used & 1u) && !sub.contains(primes[i])) return false;
  }
  return true;
}

/// Re-keys `a` over `target`; every generator `a` uses must exist in `target`.
/// Covers both embedding into a larger field and restriction to a subfield.
inline FieldElement rebase(const FieldElement& a, const PrimeBasis& target) {
  const auto& primes = a.basis().primes();
  std::vector<SupportMask> remap(primes.size(), 0);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    int idx = target.index_of(primes[i]);
    if (idx >= 0) remap[i] = SupportMask{1} << idx;
  }
  std::vector<Term> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    SupportMask m = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (t.mask & (SupportMask{1} << i)) {
        if (remap[i] == 0) {
          throw Error(Errc::NotASubfield, "generator sqrt(" + std::to_string(primes[i]) + ") absent from (" +
                                              target.to_string() + ")");
        }
        m |= remap[i];
      }
    }
    out.push_back({m, t.coeff});
  }
  return FieldElement::from_terms(target, std::move(out));
}

inline FieldElement embed(const FieldElement& a, const PrimeBasis& larger) {
  if (!a.basis().is_subfield_of(larger)) {
    throw Error(Errc::NotASubfield, "(" + a.basis().to_string() + ") not contained in (" + larger.to_string() + ")");
  }
  return rebase(a, larger);
}

namespace detail {

inline std::string trim_copy(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(Errc::ParseError, "missing integer in '" + std::string(whole) + "'");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw Error(Errc::ParseError, "bad integer in '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(Errc::ParseError, "bad integer '" + std::string(s) + "' in '" + std::string(whole) + "'");
    }
  }
  return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
}

inline Rational parse_rational(std::string_view s, std::string_view whole) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, whole));
  Integer num = parse_integer(s.substr(0, slash), whole);
  Integer den = parse_integer(s.substr(slash + 1), whole);
  if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(whole) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace detail

/// Parses the text form, e.g. "3/2*sqrt(6) + -1/3*sqrt(1)"; whitespace is ignored
/// and "a - b" is accepted as "a + -b".
inline FieldElement parse_field_element(const PrimeBasis& basis, std::string_view text) {
  const std::string s = detail::trim_copy(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty field element");
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    char prev = s[i - 1];
    if ((s[i] == '+' || s[i] == '-') && prev != '+' && prev != '-' && prev != '*' && prev != '/' && prev != '(') {
      pieces.push_back(s.substr(start, i - start));
      start = s[i] == '+' ? i + 1 : i;
    }
  }
  pieces.push_back(s.substr(start));
  FieldElement acc(basis);
  for (const auto& piece : pieces) {
    std::string_view t = piece;
    Rational coeff = 1;
    std::string_view rad;
    if (auto pos = t.find("sqrt("); pos != std::string_view::npos) {
      const auto close = t.find(')', pos);
      if (close == std::string_view::npos) throw Error(Errc::ParseError, "unterminated sqrt in '" + s + "'");
      Rational divisor = 1;
      if (close + 1 < t.size()) {
        if (t[close + 1] != '/') throw Error(Errc::ParseError, "unexpected text after sqrt in '" + s + "'");
        divisor = detail::parse_integer(t.substr(close + 2), s);
        if (divisor == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
      }
      rad = t.substr(pos + 5, close - pos - 5);
      std::string_view head = t.substr(0, pos);
      if (head.empty() || head == "+") {
        coeff = 1;
      } else if (head == "-") {
        coeff = -1;
      } else {
        if (head.back() != '*') throw Error(Errc::ParseError, "expected '*' before sqrt in '" + s + "'");
        coeff = detail::parse_rational(head.substr(0, head.size() - 1), s);
      }
      Integer n = detail::parse_integer(rad, s);
      acc += sqrt_of_integer(basis, n) * (coeff / divisor);
    } else {
      acc += FieldElement(basis, detail::parse_rational(t, s));
    }
  }
  return acc;
}

/// Decimal expansion truncated toward zero to `digits` significant digits.
/// Every emitted digit is exact: the value is bracketed by integer square
/// roots at growing scale until both ends of the bracket agree.
inline std::string approximate(const FieldElement& a, unsigned digits) {
  if (digits == 0) digits = 1;
  if (a.is_zero()) return "0";
  auto render = [&](const Integer& mag, long scale, bool negative) {
    // mag holds the leading digits of |a| * 10^scale.
    std::string d = mag.get_str();
    long point = static_cast<long>(d.size()) - scale;  // digits before the decimal point
    std::string out = negative ? "-" : "";
    if (point <= 0) {
      out += "0." + std::string(static_cast<std::size_t>(-point), '0') + d;
    } else if (point >= static_cast<long>(d.size())) {
      out += d + std::string(static_cast<std::size_t>(point - static_cast<long>(d.size())), '0');
    } else {
      out += d.substr(0, static_cast<std::size_t>(point)) + "." + d.substr(static_cast<std::size_t>(point));
    }
    return out;
  };
  auto leading = [&](const Integer& v, long scale) -> std::pair<Integer, long> {
    // Truncate v (an integer equal to |a|*10^scale) to `digits` significant digits.
    std::string d = v.get_str();
    if (d.size() <= digits) return {v, scale};
    long drop = static_cast<long>(d.size() - digits);
    return {Integer(d.substr(0, digits)), scale - drop};
  };
  if (a.is_rational()) {
    Rational q = a.rational_value();
    bool neg = q < 0;
    if (neg) q = -q;
    Integer num = q.get_num();
    Integer den = q.get_den();
    // Find scale so that floor(q * 10^scale) has at least `digits` digits.
    long scale = 0;
    Integer v = num / den;
    while (v == 0 || v.get_str().size() < digits) {
      ++scale;
      v = num * ipow(10, static_cast<unsigned long>(scale)) / den;
      if (scale > 100000) break;
    }
    auto [mag, s] = leading(v, scale);
    // Strip trailing zeros after the decimal point.
    while (s > 0 && mpz_divisible_ui_p(mag.get_mpz_t(), 10)) {
      mag /= 10;
      --s;
    }
    return render(mag, s, neg);
  }
  for (long scale = static_cast<long>(digits) + 10;; scale += 20) {
    Integer pow10sq = ipow(10, static_cast<unsigned long>(2 * scale));
    Rational lo = 0, hi = 0;
    for (const auto& t : a.terms()) {
      Integer radicand = a.basis().support_value(t.mask) * pow10sq;
      Integer r;
      mpz_sqrt(r.get_mpz_t(), radicand.get_mpz_t());
      Integer r_hi = (r * r == radicand) ? r : Integer(r + 1);
      if (t.coeff > 0) {
        lo += t.coeff * r;
        hi += t.coeff * r_hi;
      } else {
        lo += t.coeff * r_hi;
        hi += t.coeff * r;
      }
    }
    if (lo <= 0 && hi >= 0) continue;
    bool neg = hi < 0;
    Integer lo_i, hi_i;
    if (neg) {
      Rational nl = -hi, nh = -lo;
      lo_i = nl.get_num() / nl.get_den();
      hi_i = nh.get_num() / nh.get_den();
    } else {
      lo_i = lo.get_num() / lo.get_den();
      hi_i = hi.get_num() / hi.get_den();
    }
    // |a| * 10^scale lies in [lo_i, hi_i + 1).
    Integer hi_end = hi_i + 1;
    std::string ls = lo_i.get_str(), hs = hi_end.get_str();
    if (lo_i == 0 || ls.size() != hs.size() || ls.size() < digits + 1) continue;
    if (ls.compare(0, digits, hs, 0, digits) != 0) continue;
    auto [mag, s] = leading(lo_i, scale);
    while (s > 0 && mpz_divisible_ui_p(mag.get_mpz_t(), 10)) {
      mag /= 10;
      --s;
    }
    return render(mag, s, neg);
  }
}

}  // namespace quadrank
