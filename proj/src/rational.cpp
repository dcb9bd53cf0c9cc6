#include "widthcalc/rational.hpp"

#include <cctype>
#include <vector>

#include <mpfr.h>

namespace widthcalc {

namespace {

bool parse_integer(std::string_view text, mpz_class& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  if (text.find_first_of(".eE") != std::string_view::npos) {
    throw DomainError("decimal input '" + std::string(text) + "' rejected; use an exact fraction a/b");
  }
  const auto slash = text.find('/');
  mpz_class num;
  mpz_class den(1);
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw DomainError("malformed rational '" + std::string(text) + "'");
  } else {
    if (!parse_integer(trim(text.substr(0, slash)), num) ||
        !parse_integer(trim(text.substr(slash + 1)), den)) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int significant_digits) const {
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_set_q(x, value_.get_mpq_t(), MPFR_RNDN);
  std::vector<char> buf(128);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant_digits, x);
  mpfr_clear(x);
  return std::string(buf.data());
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace widthcalc
