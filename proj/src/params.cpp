#include "widthcalc/params.hpp"

#include <algorithm>
#include <sstream>

namespace widthcalc {

namespace {

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out;
}

}  // namespace

ProblemSpec::ProblemSpec(std::vector<Rational> p_, std::vector<Rational> r_, Rational q_)
    : p(std::move(p_)), r(std::move(r_)), q(std::move(q_)) {
  if (p.size() != r.size()) throw DomainError("p and r must have the same length");
  if (p.size() < 2 || p.size() > kMaxDimension) {
    throw DomainError("dimension d must lie in [2, " + std::to_string(kMaxDimension) + "]");
  }
  const Rational one(1);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= one) throw DomainError("p_" + std::to_string(j + 1) + " must exceed 1");
    if (r[j].sign() <= 0) throw DomainError("r_" + std::to_string(j + 1) + " must be positive");
  }
  if (q <= one) throw DomainError("q must exceed 1");
}

std::string ProblemSpec::describe() const {
  return "d=" + std::to_string(d()) + " p=(" + join(p) + ") r=(" + join(r) + ") q=" + q.str();
}

Rational harmonic_mean(const std::vector<Rational>& a) {
  if (a.empty()) throw DomainError("harmonic mean of an empty sequence");
  Rational sum;
  for (const auto& x : a) {
    if (x.sign() <= 0) throw DomainError("harmonic mean requires positive entries");
    sum += x.inverse();
  }
  return Rational(static_cast<std::int64_t>(a.size())) / sum;
}

std::vector<Rational> hadamard(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw DomainError("hadamard product of sequences of different length");
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

IndexPartition partition_indices(const ProblemSpec& spec) {
  IndexPartition part;
  part.q_le_2 = spec.q_le_2();
  const Rational two(2);
  for (std::size_t j = 0; j < spec.d(); ++j) {
    const Rational& pj = spec.p[j];
    if (part.q_le_2) {
      if (pj >= spec.q) part.I0.push_back(j);
      if (pj <= spec.q) part.J0.push_back(j);
      if (pj > spec.q) part.I0p.push_back(j);
      if (pj < spec.q) part.J0p.push_back(j);
    } else {
      if (pj >= spec.q) part.I.push_back(j);
      if (pj >= two && pj <= spec.q) part.J.push_back(j);
      if (pj <= two) part.K.push_back(j);
      if (pj > spec.q) part.Ip.push_back(j);
      if (pj > two && pj < spec.q) part.Jp.push_back(j);
      if (pj < two) part.Kp.push_back(j);
    }
  }
  return part;
}

Rational interpolation_weight(const Rational& inv_a, const Rational& inv_b, const Rational& inv_target) {
  if (inv_a == inv_b) throw DomainError("interpolation between equal exponents");
  return (inv_target - inv_a) / (inv_b - inv_a);
}

bool contains(const IndexSet& set, std::size_t j) {
  return std::find(set.begin(), set.end(), j) != set.end();
}

InterpCoeffs::InterpCoeffs(const ProblemSpec& spec, const IndexPartition& part)
    : spec_(spec), part_(part) {}

bool InterpCoeffs::lambda_defined(std::size_t i, std::size_t j) const {
  if (part_.q_le_2) return contains(part_.I0p, i) && contains(part_.J0p, j);
  return contains(part_.Ip, i) && (contains(part_.Jp, j) || contains(part_.K, j));
}

bool InterpCoeffs::mu_defined(std::size_t i, std::size_t j) const {
  // q <= 2 has no μ-pieces; the weight is still offered for pairs straddling 2
  if (part_.q_le_2) return spec_.p[i] > Rational(2) && spec_.p[j] < Rational(2);
  return (contains(part_.I, i) || contains(part_.Jp, i)) && contains(part_.Kp, j);
}

Rational InterpCoeffs::lambda(std::size_t i, std::size_t j) const {
  if (!lambda_defined(i, j)) {
    throw DomainError("lambda(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not defined");
  }
  return interpolation_weight(spec_.inv_p(i), spec_.inv_p(j), spec_.inv_q());
}

Rational InterpCoeffs::mu(std::size_t i, std::size_t j) const {
  if (!mu_defined(i, j)) {
    throw DomainError("mu(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not defined");
  }
  return interpolation_weight(spec_.inv_p(i), spec_.inv_p(j), Rational(1, 2));
}

Rational galeev_value(const ProblemSpec& spec) {
  const Rational d(static_cast<std::int64_t>(spec.d()));
  const Rational hr = harmonic_mean(spec.r);
  const Rational hpr = harmonic_mean(hadamard(spec.p, spec.r));
  return hr / d + spec.inv_q() - hr / hpr;
}

}  // namespace widthcalc
