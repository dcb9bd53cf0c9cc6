#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "widthcalc/rational.hpp"

namespace widthcalc {

/// Positive real Π b_k^{e_k} with integer bases b_k >= 2 and rational exponents.
/// Bases are kept pairwise coprime. Coprime integers are multiplicatively independent, so a
/// product is 1 iff every exponent is 0; equality is decided on the quotient. The factor list
/// itself is not canonical (6^(1/2) and 2^(1/2)*3^(1/2) are stored differently).
class PowerProduct {
 public:
  PowerProduct() = default;

  static PowerProduct from_integer(std::uint64_t v);
  static PowerProduct from_rational(const Rational& v);  // v > 0
  static PowerProduct power(const Rational& base, const Rational& exponent);  // base > 0

  PowerProduct pow(const Rational& exponent) const;
  PowerProduct inverse() const { return pow(Rational(-1)); }

  friend PowerProduct operator*(const PowerProduct& a, const PowerProduct& b);
  friend PowerProduct operator/(const PowerProduct& a, const PowerProduct& b) { return a * b.inverse(); }

  /// Exact three-way comparison: -1, 0 or 1.
  static int compare(const PowerProduct& a, const PowerProduct& b);
  friend bool operator==(const PowerProduct& a, const PowerProduct& b) {
    return a.factors_ == b.factors_ || (a / b).is_one();
  }
  friend bool operator<(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) < 0; }
  friend bool operator<=(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) <= 0; }
  friend bool operator>(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) > 0; }
  friend bool operator>=(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) >= 0; }

  bool is_one() const { return factors_.empty(); }
  /// Exact rational value when every exponent is an integer.
  std::optional<Rational> as_rational() const;
  /// e when the value equals 2^e exactly.
  std::optional<Rational> exact_log2() const;

  /// ⌈x⌉ and ⌊x⌋, decided exactly. Throws RangeError if the result exceeds 2^63.
  std::uint64_t ceil_integer() const;
  std::uint64_t floor_integer() const;

  /// e.g. "2^(-1/2)*5^(1/3)", "1" for the empty product.
  std::string str() const;
  std::string decimal(int significant_digits = 12) const;
  double to_double() const;
  double log2_double() const;

  const std::vector<std::pair<mpz_class, Rational>>& factors() const { return factors_; }

 private:
  void normalize();
  std::vector<std::pair<mpz_class, Rational>> factors_;
};

PowerProduct min(const PowerProduct& a, const PowerProduct& b);

}  // namespace widthcalc
