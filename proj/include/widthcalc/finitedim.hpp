#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "widthcalc/params.hpp"
#include "widthcalc/power_product.hpp"

namespace widthcalc {

/// p in [1, ∞], stored as 1/p so that ∞ is the exact value 0.
struct LebesgueExponent {
  Rational inv;

  static LebesgueExponent finite(const Rational& p);
  static LebesgueExponent infinity() { return LebesgueExponent{Rational()}; }
  /// "inf" or an exact rational >= 1.
  static LebesgueExponent parse(std::string_view text);

  bool is_inf() const { return inv.is_zero(); }
  std::string str() const;
  /// Compares exponents p (not 1/p).
  friend bool operator==(const LebesgueExponent&, const LebesgueExponent&) = default;
  bool less_than(const Rational& v) const { return !is_inf() && inv > v.inverse(); }
  bool greater_than(const Rational& v) const { return is_inf() || inv < v.inverse(); }
};

struct BallSpec {
  LebesgueExponent p;
  PowerProduct nu;
};

struct IntersectionSpec {
  std::uint64_t N = 0;
  std::uint64_t n = 0;
  Rational q{2};
  std::vector<BallSpec> balls;
};

struct OrderTerm {
  std::string label;
  PowerProduct value;
};

enum class CertificateKind { B1Inclusion, BinfInclusion, VkInclusion };
std::string certificate_kind_name(CertificateKind k);

struct CertificateInequality {
  std::size_t gamma = 0;
  PowerProduct lhs;
  PowerProduct rhs;
  bool holds = false;
};

/// scale·V_k ⊂ factor·M₀, certified ball by ball via scale·k^{1/p_γ} <= factor·ν_γ.
struct LowerBoundCertificate {
  CertificateKind kind = CertificateKind::VkInclusion;
  int lemma = 0;
  int lemma_case = 0;
  std::size_t alpha_star = 0;
  std::optional<std::size_t> beta_star;
  std::uint64_t k = 1;
  std::optional<PowerProduct> l;
  PowerProduct scale;
  Rational factor{1};
  std::vector<CertificateInequality> checked;
  /// scale · (V_k lower bound) / factor.
  PowerProduct lower_bound;
  /// The same expression with the real l in place of the integer k.
  PowerProduct symbolic_bound;

  bool verified() const;
};

struct WidthOrder {
  PowerProduct value;
  std::string branch;
  bool exact = false;
  std::vector<OrderTerm> terms;
  std::optional<LowerBoundCertificate> certificate;
};

struct BranchClassification {
  int lemma = 0;
  int lemma_case = 0;  // 0 = no case's hypotheses hold
  std::vector<int> matching_cases;
  std::optional<LowerBoundCertificate> certificate;
  std::string label() const;
};

/// d_n(B_p^N, l_q^N): exact for q <= p, order otherwise.
WidthOrder single_ball_order(const LebesgueExponent& p, const LebesgueExponent& q, std::uint64_t n, std::uint64_t N);

/// Minimum over all terms of the intersection formula for the regime of q.
WidthOrder intersection_order(const IntersectionSpec& spec);

BranchClassification classify_branch(const IntersectionSpec& spec);

/// Lower bound for d_n(V_k, l_q^N), modulo constants.
PowerProduct vk_lower_bound(std::uint64_t k, std::uint64_t N, std::uint64_t n, const Rational& q);

struct DyadicBlock {
  std::vector<std::uint64_t> m_vec;
  std::uint64_t m() const;
};

/// Radii 2^{-m_j r_j - m/q + m/p_j} with N = 2^m.
IntersectionSpec dyadic_block_spec(const ProblemSpec& spec, const DyadicBlock& block, std::uint64_t n);
WidthOrder dyadic_block_order(const ProblemSpec& spec, const DyadicBlock& block, std::uint64_t n);

Rational phi(const ProblemSpec& spec, const std::vector<Rational>& t);
/// Requires q > 2. log2_n is the (rational) base-2 logarithm of n.
Rational psi_n(const ProblemSpec& spec, const std::vector<Rational>& t, const Rational& t_total, const Rational& log2_n);

/// -log₂ of the bound on C_m̄ before the μ-terms are discarded (q > 2), or φ(m̄) for q <= 2.
Rational cm_exponent(const ProblemSpec& spec, const std::vector<Rational>& m_vec);

struct DominationCheck {
  std::size_t i = 0;
  std::size_t j = 0;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// The two inequalities bounding the μ-terms of C_m̄, for every i ∈ I ∪ J', j ∈ K'. Requires q > 2.
std::vector<DominationCheck> check_domination(const ProblemSpec& spec, const std::vector<Rational>& m_vec);

}  // namespace widthcalc
