#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "widthcalc/finitedim.hpp"
#include "widthcalc/objective.hpp"
#include "widthcalc/params.hpp"
#include "widthcalc/rng.hpp"

namespace widthcalc {

inline constexpr std::uint64_t kGridPointGuard = std::uint64_t{1} << 20;

/// h / h̃ transcribed directly from the index-set definitions, without the exponent module.
PiecewiseMax reference_objective(const ProblemSpec& spec);

struct GridReport {
  std::uint64_t G = 0;
  Rational grid_step;
  Rational best_value;
  Point best_point;
  Rational gap_bound;
  std::uint64_t points = 0;

  bool brackets(const Rational& theta) const { return best_value - gap_bound <= theta && theta <= best_value; }
};

/// Lattice points of the feasible set with denominator G (s-levels m/G, G <= m <= G·s_upper).
std::uint64_t grid_point_count(std::size_t dim, const FeasibleSet& feas, std::uint64_t G);

/// Exhaustive exact evaluation; throws RangeError when the point count exceeds kGridPointGuard.
GridReport grid_minimize(const PiecewiseMax& obj, const FeasibleSet& feas, std::uint64_t G);

/// Grid check of θ starting at G, refined ×4 while the bracket misses θ and the guard allows.
struct GridCheck {
  GridReport report;
  bool bracketed = false;
  int refinements = 0;
};
GridCheck grid_check(const ProblemSpec& spec, const Rational& theta, std::uint64_t G);

std::uint64_t default_grid(std::size_t d);

struct IdentityViolation {
  std::string identity;
  std::string spec;
  std::string witness;
};

struct ScalingReport {
  std::uint64_t points_checked = 0;
  std::vector<IdentityViolation> violations;
};

/// φ(t) = t·h(t/Σt) for all q; for q > 2 also h̃(α, q/2) = (q/2)·h(2α/q) and ψₙ(t, t) = h̃(t/L, t/L)·L.
ScalingReport check_scaling_identities(const ProblemSpec& spec, std::uint64_t samples, std::uint64_t seed);

/// Strata of the closed-form theorems.
const std::vector<std::string>& strata();

/// Draws a spec targeting the structural conditions of a stratum (the theorem's own
/// hypotheses are then tested by the closed-form pipeline). q > 2 strata use d = 2 so the
/// grid stays below the point guard at G = 128·d.
ProblemSpec sample_stratum_spec(const std::string& stratum, Lcg64& rng, std::size_t max_d = 3);

struct Mismatch {
  std::string spec;
  std::string closed_form;
  std::string lp;
};

struct StratumReport {
  std::string name;
  std::uint64_t requested = 0;
  std::uint64_t matched = 0;
  std::uint64_t draws = 0;
  std::uint64_t nonunique = 0;
  std::uint64_t grid_checked = 0;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> grid_failures;
  std::vector<std::string> ties;
  bool exhausted = false;  // rejection sampling hit its draw limit
};

struct CrossValidationOptions {
  bool grid = true;
  std::uint64_t grid_per_dim = 64;  // G = grid_per_dim · d
  bool inject_fault = false;        // flips the sign of the α₁ coefficient in every LP piece
  std::size_t max_d = 3;
};

struct CrossValidationReport {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<StratumReport> strata;
  bool ok() const;
};

CrossValidationReport cross_validate(std::uint64_t sample_count, std::uint64_t seed,
                                     const CrossValidationOptions& options = {});

struct CertificateSweepReport {
  std::uint64_t classified = 0;
  std::uint64_t draws = 0;
  std::uint64_t unclassified = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

IntersectionSpec sample_intersection_spec(Lcg64& rng);

/// Draws intersection specs until `count` of them are classified by a lemma case, and checks
/// every certificate and its agreement with the order formula.
CertificateSweepReport certificate_sweep(std::uint64_t count, std::uint64_t seed);

/// Independent long-double evaluation of the intersection order formula.
long double brute_force_intersection(std::uint64_t N, std::uint64_t n, long double q,
                                     const std::vector<std::pair<long double, long double>>& p_nu);

struct VerifyReport {
  CrossValidationReport cross;
  std::vector<ScalingReport> scaling;
  std::uint64_t scaling_specs = 0;
  CertificateSweepReport certificates;
  bool ok() const;
  std::string text() const;
  std::string json() const;
};

VerifyReport run_verification(std::uint64_t samples, std::uint64_t seed, const CrossValidationOptions& options = {});

}  // namespace widthcalc
