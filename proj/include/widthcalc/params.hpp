#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "widthcalc/rational.hpp"

namespace widthcalc {

inline constexpr std::size_t kMaxDimension = 16;

/// Parameters (d, p̄, r̄, q) of an anisotropic Sobolev class and target space L_q.
struct ProblemSpec {
  std::vector<Rational> p;
  std::vector<Rational> r;
  Rational q;

  /// Throws DomainError unless 2 <= d <= kMaxDimension, 1 < p_j, q < inf and r_j > 0.
  ProblemSpec(std::vector<Rational> p_, std::vector<Rational> r_, Rational q_);

  std::size_t d() const { return p.size(); }
  Rational inv_p(std::size_t j) const { return p[j].inverse(); }
  Rational inv_q() const { return q.inverse(); }
  bool q_le_2() const { return q <= Rational(2); }

  std::string describe() const;
};

using IndexSet = std::vector<std::size_t>;

/// Index sets of the two regimes. Only the group matching the spec's q is filled.
struct IndexPartition {
  bool q_le_2 = true;
  // q <= 2
  IndexSet I0, J0, I0p, J0p;
  // q > 2
  IndexSet I, J, K, Ip, Jp, Kp;
};

Rational harmonic_mean(const std::vector<Rational>& a);
std::vector<Rational> hadamard(const std::vector<Rational>& a, const std::vector<Rational>& b);

IndexPartition partition_indices(const ProblemSpec& spec);

/// Weight w with inv_target = (1 - w) * inv_a + w * inv_b.
Rational interpolation_weight(const Rational& inv_a, const Rational& inv_b, const Rational& inv_target);

/// Lazily evaluated λ_{i,j} and μ_{i,j}. Pairs outside the defining index combinations throw.
class InterpCoeffs {
 public:
  InterpCoeffs(const ProblemSpec& spec, const IndexPartition& part);

  Rational lambda(std::size_t i, std::size_t j) const;
  Rational mu(std::size_t i, std::size_t j) const;

  bool lambda_defined(std::size_t i, std::size_t j) const;
  bool mu_defined(std::size_t i, std::size_t j) const;

 private:
  ProblemSpec spec_;
  IndexPartition part_;
};

bool contains(const IndexSet& set, std::size_t j);

/// ⟨r̄⟩/d + 1/q − ⟨r̄⟩/⟨p̄∘r̄⟩.
Rational galeev_value(const ProblemSpec& spec);

}  // namespace widthcalc
