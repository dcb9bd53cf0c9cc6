#include "widthcalc/power_product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace widthcalc {

namespace {

using Factor = std::pair<mpz_class, Rational>;

// Replaces b by c with b = c^k for the largest possible k.
bool reduce_perfect_power(Factor& f) {
  if (mpz_perfect_power_p(f.first.get_mpz_t()) == 0) return false;
  const std::size_t bits = mpz_sizeinbase(f.first.get_mpz_t(), 2);
  mpz_class root;
  for (std::size_t k = bits; k >= 2; --k) {
    if (mpz_root(root.get_mpz_t(), f.first.get_mpz_t(), k) != 0) {
      f.first = root;
      f.second *= Rational(static_cast<std::int64_t>(k));
      return true;
    }
  }
  return false;
}

// Sum of e_k * ln(b_k) and a bound on its absolute error, at the given precision.
struct LogSum {
  mpfr_t sum;
  mpfr_t abs_sum;
  explicit LogSum(mpfr_prec_t prec) {
    mpfr_init2(sum, prec);
    mpfr_init2(abs_sum, prec);
    mpfr_set_zero(sum, 1);
    mpfr_set_zero(abs_sum, 1);
  }
  ~LogSum() {
    mpfr_clear(sum);
    mpfr_clear(abs_sum);
  }
  LogSum(const LogSum&) = delete;
  LogSum& operator=(const LogSum&) = delete;
};

void accumulate(LogSum& acc, const std::vector<Factor>& factors, mpfr_prec_t prec) {
  mpfr_t lg, e;
  mpfr_init2(lg, prec);
  mpfr_init2(e, prec);
  for (const auto& [b, ex] : factors) {
    mpfr_set_z(lg, b.get_mpz_t(), MPFR_RNDN);
    mpfr_log(lg, lg, MPFR_RNDN);
    mpfr_set_q(e, ex.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_mul(lg, lg, e, MPFR_RNDN);
    mpfr_add(acc.sum, acc.sum, lg, MPFR_RNDN);
    mpfr_abs(lg, lg, MPFR_RNDN);
    mpfr_add(acc.abs_sum, acc.abs_sum, lg, MPFR_RNDU);
  }
  mpfr_clear(lg);
  mpfr_clear(e);
}

// Sign of Σ e_k ln b_k for a normalised, nonempty factor list (never zero).
int log_sign(const std::vector<Factor>& factors) {
  for (mpfr_prec_t prec = 64; prec <= (mpfr_prec_t{1} << 20); prec *= 2) {
    LogSum acc(prec);
    accumulate(acc, factors, prec);
    // Every rounding step has relative error <= 2^-prec; the total error is bounded by
    // (4n + 4) 2^-prec (Σ|terms| + 1). The 2^8 slack covers n up to 60 factors.
    mpfr_t bound;
    mpfr_init2(bound, 64);
    mpfr_add_ui(bound, acc.abs_sum, 1, MPFR_RNDU);
    mpfr_mul_ui(bound, bound, 4 * factors.size() + 4, MPFR_RNDU);
    mpfr_mul_2si(bound, bound, -static_cast<long>(prec) + 8, MPFR_RNDU);
    const bool decided = mpfr_cmpabs(acc.sum, bound) > 0;
    const int sign = mpfr_sgn(acc.sum);
    mpfr_clear(bound);
    if (decided) return sign;
  }
  throw std::logic_error("power product comparison did not converge");
}

}  // namespace

void PowerProduct::normalize() {
  bool changed = true;
  while (changed) {
    changed = false;
    std::erase_if(factors_, [](const Factor& f) { return f.first == 1 || f.second.is_zero(); });
    for (auto& f : factors_) {
      if (reduce_perfect_power(f)) changed = true;
    }
    for (std::size_t a = 0; a < factors_.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < factors_.size() && !changed; ++b) {
        if (factors_[a].first == factors_[b].first) {
          factors_[a].second += factors_[b].second;
          factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(b));
          changed = true;
          break;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), factors_[a].first.get_mpz_t(), factors_[b].first.get_mpz_t());
        if (g > 1) {
          const Rational ea = factors_[a].second;
          const Rational eb = factors_[b].second;
          factors_[a].first /= g;
          factors_[b].first /= g;
          factors_.emplace_back(g, ea + eb);
          changed = true;
        }
      }
    }
  }
  std::sort(factors_.begin(), factors_.end(),
            [](const Factor& x, const Factor& y) { return cmp(x.first, y.first) < 0; });
}

PowerProduct PowerProduct::from_integer(std::uint64_t v) {
  return power(Rational(mpq_class(mpz_class(std::to_string(v)))), Rational(1));
}

PowerProduct PowerProduct::from_rational(const Rational& v) { return power(v, Rational(1)); }

PowerProduct PowerProduct::power(const Rational& base, const Rational& exponent) {
  if (base.sign() <= 0) throw DomainError("power product base must be positive");
  PowerProduct out;
  out.factors_.emplace_back(base.numerator(), exponent);
  out.factors_.emplace_back(base.denominator(), -exponent);
  out.normalize();
  return out;
}

PowerProduct PowerProduct::pow(const Rational& exponent) const {
  PowerProduct out = *this;
  for (auto& f : out.factors_) f.second *= exponent;
  out.normalize();
  return out;
}

PowerProduct operator*(const PowerProduct& a, const PowerProduct& b) {
  PowerProduct out = a;
  out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
  out.normalize();
  return out;
}

int PowerProduct::compare(const PowerProduct& a, const PowerProduct& b) {
  const PowerProduct q = a / b;
  if (q.factors_.empty()) return 0;
  return log_sign(q.factors_);
}

std::optional<Rational> PowerProduct::as_rational() const {
  mpq_class v(1);
  for (const auto& [b, e] : factors_) {
    if (!e.is_integer()) return std::nullopt;
    const mpz_class ex = e.numerator();
    if (!ex.fits_slong_p()) throw RangeError("exponent too large for exact evaluation");
    mpz_class p;
    const long k = ex.get_si();
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    if (k < 0) v /= mpq_class(p);
    else v *= mpq_class(p);
  }
  return Rational(v);
}

std::optional<Rational> PowerProduct::exact_log2() const {
  if (factors_.empty()) return Rational(0);
  if (factors_.size() == 1 && factors_[0].first == 2) return factors_[0].second;
  return std::nullopt;
}

namespace {

std::uint64_t to_u64(const mpz_class& z) {
  if (sgn(z) < 0) throw RangeError("negative value where a nonnegative integer is required");
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 63) throw RangeError("integer exceeds 2^63");
  return std::stoull(z.get_str());
}

}  // namespace

std::uint64_t PowerProduct::floor_integer() const {
  if (auto r = as_rational()) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), r->numerator().get_mpz_t(), r->denominator().get_mpz_t());
    return to_u64(f);
  }
  const double approx = to_double();
  if (!(approx < 9.2e18)) throw RangeError("integer exceeds 2^63");
  std::uint64_t c = static_cast<std::uint64_t>(std::floor(approx));
  while (c > 0 && from_integer(c) > *this) --c;
  while (from_integer(c + 1) <= *this) ++c;
  return c;
}

std::uint64_t PowerProduct::ceil_integer() const {
  const std::uint64_t f = floor_integer();
  if (from_integer(f) == *this) return f;
  return f + 1;
}

std::string PowerProduct::str() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [b, e] : factors_) {
    if (!out.empty()) out += "*";
    out += b.get_str();
    if (e != Rational(1)) out += "^(" + e.str() + ")";
  }
  return out;
}

std::string PowerProduct::decimal(int significant_digits) const {
  const mpfr_prec_t prec = 256;
  LogSum acc(prec);
  accumulate(acc, factors_, prec);
  mpfr_exp(acc.sum, acc.sum, MPFR_RNDN);
  std::vector<char> buf(128);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant_digits, acc.sum);
  return std::string(buf.data());
}

double PowerProduct::log2_double() const {
  double v = 0;
  for (const auto& [b, e] : factors_) v += e.to_double() * std::log2(b.get_d());
  return v;
}

double PowerProduct::to_double() const { return std::exp2(log2_double()); }

PowerProduct min(const PowerProduct& a, const PowerProduct& b) { return b < a ? b : a; }

}  // namespace widthcalc
