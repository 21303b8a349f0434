#pragma once

// Exact univariate polynomials with rational coefficients, and the algebraic
// identities behind the tuple families: the cubic and quintic constant sums,
// the constant first-four sum of the 5/4 family, and the degree drop of
// (X+1)^s - (X-1)^s - 2s (X^2 + (s-2)/3)^((s-1)/2).

#include <climits>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "nconj/arith.hpp"

namespace nconj {

class Poly {
public:
  /// Degree of the zero polynomial.
  static constexpr long kZeroDegree = LONG_MIN;

  Poly() = default;
  Poly(long c) { set(0, Rational(c)); }
  Poly(const Int& c) { set(0, Rational(c)); }
  Poly(const Rational& c) { set(0, c); }

  static Poly X() {
    Poly p;
    p.set(1, Rational(1));
    return p;
  }
  static Poly monomial(const Rational& c, unsigned long degree) {
    Poly p;
    p.set(degree, c);
    return p;
  }

  long degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<long>(coeffs_.rbegin()->first); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0); }

  Rational coeff(unsigned long degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.rbegin()->second; }
  const std::map<unsigned long, Rational>& coefficients() const { return coeffs_; }

  /// No odd-degree coefficients.
  bool is_even() const {
    for (const auto& [d, c] : coeffs_)
      if (d % 2 == 1) return false;
    return true;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [d, c] : o.coeffs_) set(d, coeff(d) + c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [d, c] : o.coeffs_) set(d, coeff(d) - c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [da, ca] : a.coeffs_)
      for (const auto& [db, cb] : b.coeffs_) r.set(da + db, r.coeff(da + db) + ca * cb);
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  Poly pow(unsigned long e) const {
    Poly result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  Rational eval(const Rational& x) const {
    // Horner over the sparse map, highest degree first.
    Rational acc = 0;
    long prev = degree();
    if (prev == kZeroDegree) return acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      for (long k = prev; k > static_cast<long>(it->first); --k) acc *= x;
      acc += it->second;
      prev = static_cast<long>(it->first);
    }
    for (long k = prev; k > 0; --k) acc *= x;
    return acc;
  }
  Rational eval(const Int& x) const { return eval(Rational(x)); }

  /// Quotient and remainder by a nonzero divisor.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const {
    if (divisor.is_zero()) throw domain_error("Poly::divmod: division by zero polynomial");
    Poly q, r = *this;
    const long dd = divisor.degree();
    const Rational lead = divisor.leading();
    while (!r.is_zero() && r.degree() >= dd) {
      unsigned long shift = static_cast<unsigned long>(r.degree() - dd);
      Rational c = r.leading() / lead;
      Poly term = monomial(c, shift);
      q += term;
      r -= term * divisor;
    }
    return {q, r};
  }
  Poly operator%(const Poly& divisor) const { return divmod(divisor).second; }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      Rational c = it->second;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      Rational a = abs(c);
      bool unit = a == 1 && it->first != 0;
      if (!unit) os << a.get_str();
      if (it->first >= 1) os << "X";
      if (it->first >= 2) os << "^" << it->first;
      first = false;
    }
    return os.str();
  }

private:
  void set(unsigned long degree, Rational c) {
    c.canonicalize();
    if (c == 0) coeffs_.erase(degree);
    else coeffs_[degree] = std::move(c);
  }

  std::map<unsigned long, Rational> coeffs_;
};

/// Integer value of a rational that must be integral.
inline Int require_integer(const Rational& r, const char* what) {
  if (r.get_den() != 1) throw std::logic_error(std::string(what) + ": expected an integer, got " + r.get_str());
  return r.get_num();
}

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

/// (X-1)^5 + c (X^2+1)^2 - (X+1)^5; constant 8 exactly when c = 10.
inline Poly deg5_identity_lhs(const Rational& c = 10) {
  const Poly x = Poly::X();
  return (x - 1).pow(5) + Poly(c) * (x * x + 1).pow(2) - (x + 1).pow(5);
}

inline bool verify_deg5_identity(const Rational& c = 10) { return deg5_identity_lhs(c) == Poly(8); }

/// (S+1)^3 - (S-1)^3 - c S^2; constant 2 exactly when c = 6.
inline Poly cubic_identity_lhs(const Rational& c = 6) {
  const Poly s = Poly::X();
  return (s + 1).pow(3) - (s - 1).pow(3) - Poly(c) * s * s;
}

inline bool verify_cubic_identity(const Rational& c = 6) { return cubic_identity_lhs(c) == Poly(2); }

enum class FourthEntryReading {
  ten_y_cubed,      ///< a4 = -(X^2 + 10 y^3)^2
  ten_y_all_cubed   ///< a4 = -(X^2 + (10 y)^3)^2
};

struct ConstantSumCheck {
  bool holds = false;
  Poly residual;  ///< a1+a2+a3+a4 as a polynomial in X
  Int expected;   ///< 2y^5 - 100y^6
};

/// (X+y)^5 - (X-y)^5 - (10y-1) X^4 - (X^2 + k)^2 with k per the reading;
/// holds iff the result is the constant 2y^5 - 100y^6.
inline ConstantSumCheck verify_54_constant(const Int& y,
                                           FourthEntryReading reading = FourthEntryReading::ten_y_cubed) {
  if (y < 1) throw domain_error("verify_54_constant: y must be >= 1");
  const Poly x = Poly::X();
  const Poly py(y);
  Int k = reading == FourthEntryReading::ten_y_cubed ? Int(10 * pow(y, 3)) : pow(Int(10 * y), 3);
  ConstantSumCheck out;
  out.residual = (x + py).pow(5) - (x - py).pow(5) - Poly(Int(10 * y - 1)) * x.pow(4) - (x * x + Poly(k)).pow(2);
  out.expected = 2 * pow(y, 5) - 100 * pow(y, 6);
  out.holds = out.residual == Poly(out.expected);
  return out;
}

/// s odd, s = 2 mod 3, s >= 5.
inline bool admissible_s(long s) { return s >= 5 && s % 2 == 1 && s % 3 == 2; }

/// (X+1)^s - (X-1)^s - 2s (X^2 + (s-2)/3)^((s-1)/2).
inline Poly a123_poly(long s) {
  if (!admissible_s(s))
    throw domain_error("a123_poly: s = " + std::to_string(s) + " is not odd with s = 2 mod 3");
  const Poly x = Poly::X();
  const auto us = static_cast<unsigned long>(s);
  Poly shift(Int((s - 2) / 3));
  return (x + 1).pow(us) - (x - 1).pow(us) - Poly(Int(2 * s)) * (x * x + shift).pow((us - 1) / 2);
}

struct ZConstants {
  Int z0, z1, z2;
};

/// Remainders of a123_poly(s) modulo X^2, X^2 - 1 and X^2 + (s-2)/3. Each must
/// be a constant because a123_poly(s) is even.
inline ZConstants z_constants(long s) {
  const Poly p = a123_poly(s);
  const Poly x = Poly::X();
  auto constant_rem = [&](const Poly& m) {
    Poly r = p % m;
    if (!r.is_constant())
      throw std::logic_error("z_constants: remainder " + r.str() + " is not constant");
    return require_integer(r.coeff(0), "z_constants");
  };
  return {constant_rem(x * x), constant_rem(x * x - 1), constant_rem(x * x + Poly(Int((s - 2) / 3)))};
}

} // namespace nconj
