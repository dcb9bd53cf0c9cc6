#pragma once

#include <map>
#include <optional>
#include <string>

#include "widthcalc/params.hpp"

namespace widthcalc {

struct RegimeReport {
  bool bounded = false;
  bool compact = false;
  bool dop_usl_holds = false;
  std::string theorem_case = "uncovered";
  std::map<std::string, Rational> thetas;
  std::optional<Rational> exponent;
  bool tie = false;
  std::string note;
};

/// ⟨r̄⟩/d + 1/q − ⟨r̄⟩/⟨p̄∘r̄⟩ >= 0.
bool check_bounded(const ProblemSpec& spec);

/// Σ_i (1/r_i)(1/p_i − 1/p_j), one entry per j.
std::vector<Rational> dop_usl_sums(const ProblemSpec& spec);

/// Every entry of dop_usl_sums is < 1.
bool check_dop_usl(const ProblemSpec& spec);

/// Non-compactness criterion for p_k <= q. Empty when some p_k > q (not applicable).
std::optional<bool> check_noncompact_T3(const ProblemSpec& spec);

RegimeReport theorem1_exponent(const ProblemSpec& spec);

/// Empty when d != 2 or the ordering/smoothness preconditions fail. Indices are
/// relabelled so that p₁ > p₂ before the conditions are tested.
std::optional<RegimeReport> theorem4_exponent(const ProblemSpec& spec);

/// Screening order: non-compactness criterion, general closed form, d = 2 ordered form, then
/// the embedding criterion (a negative value only labels specs no closed form covers).
RegimeReport classify_regime(const ProblemSpec& spec);

}  // namespace widthcalc
