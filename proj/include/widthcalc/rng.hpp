#pragma once

#include <cstdint>
#include <random>

#include "widthcalc/rational.hpp"

namespace widthcalc {

/// 64-bit LCG with Knuth's MMIX constants, modulus 2^64. Bit-for-bit reproducible everywhere.
class Lcg64 {
 public:
  using Engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

  explicit Lcg64(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [0, n) from the high 32 bits (low LCG bits have short periods).
  std::uint64_t below(std::uint64_t n) { return (next() >> 32) % n; }

  /// Integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return below(2) == 1; }

  /// Rational a/b in the open interval (lo, hi) with 1 <= b <= 64 and |a| <= 64 * max(1, |hi|).
  Rational rational_in(const Rational& lo, const Rational& hi);

 private:
  Engine engine_;
};

inline Rational Lcg64::rational_in(const Rational& lo, const Rational& hi) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::int64_t den = between(1, 64);
    const Rational a = lo * Rational(den);
    const Rational b = hi * Rational(den);
    // integer range strictly inside (a, b)
    mpz_class first, last;
    mpz_fdiv_q(first.get_mpz_t(), a.numerator().get_mpz_t(), a.denominator().get_mpz_t());
    first += 1;
    mpz_cdiv_q(last.get_mpz_t(), b.numerator().get_mpz_t(), b.denominator().get_mpz_t());
    last -= 1;
    if (last < first) continue;
    const std::int64_t f = first.get_si();
    const std::int64_t l = last.get_si();
    return Rational(between(f, l), den);
  }
  throw DomainError("interval too narrow for bounded-denominator sampling");
}

}  // namespace widthcalc
