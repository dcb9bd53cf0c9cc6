#pragma once

#include <string>
#include <vector>

#include "widthcalc/params.hpp"
#include "widthcalc/rational.hpp"
#include "widthcalc/rng.hpp"

namespace testing {

using widthcalc::Lcg64;
using widthcalc::ProblemSpec;
using widthcalc::Rational;

inline Rational Q(const char* text) { return Rational::parse(text); }

inline std::vector<Rational> Qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(Rational::parse(s));
  return out;
}

inline ProblemSpec spec_of(std::initializer_list<const char*> p, std::initializer_list<const char*> r, const char* q) {
  return ProblemSpec(Qs(p), Qs(r), Q(q));
}

/// p_j in (1, 8), r_j in (0, 4), q in (1, 8); d in [2, max_d].
inline ProblemSpec random_spec(Lcg64& rng, std::size_t max_d = 4) {
  const std::size_t d = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(max_d)));
  std::vector<Rational> p(d), r(d);
  for (std::size_t j = 0; j < d; ++j) {
    p[j] = rng.rational_in(Rational(1), Rational(8));
    r[j] = rng.rational_in(Rational(0), Rational(4));
  }
  return ProblemSpec(p, r, rng.rational_in(Rational(1), Rational(8)));
}

/// Same, with q > 2 and every p_j outside {2, q}.
inline ProblemSpec random_spec_q_gt_2(Lcg64& rng, std::size_t max_d = 4) {
  for (;;) {
    const std::size_t d = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(max_d)));
    const Rational q = rng.rational_in(Rational(2), Rational(8));
    std::vector<Rational> p(d), r(d);
    bool ok = true;
    for (std::size_t j = 0; j < d; ++j) {
      p[j] = rng.rational_in(Rational(1), Rational(10));
      r[j] = rng.rational_in(Rational(0), Rational(4));
      if (p[j] == Rational(2) || p[j] == q) ok = false;
    }
    if (ok) return ProblemSpec(p, r, q);
  }
}

/// Random rational point of the simplex scaled to sum s.
inline std::vector<Rational> random_simplex_point(Lcg64& rng, std::size_t d, const Rational& s) {
  std::vector<Rational> w(d);
  Rational total;
  for (auto& x : w) {
    x = Rational(static_cast<std::int64_t>(rng.below(50)));
    total += x;
  }
  if (total.is_zero()) {
    w[rng.below(d)] = Rational(1);
    total = Rational(1);
  }
  for (auto& x : w) x = x * s / total;
  return w;
}

}  // namespace testing
