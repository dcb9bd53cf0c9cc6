#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "widthcalc/finitedim.hpp"
#include "widthcalc/params.hpp"

namespace widthcalc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitNotCompact = 2,
  kExitUncovered = 3,
  kExitUsage = 4,
};

/// "a,b/c,..." -> rationals. Decimal entries are rejected.
std::vector<Rational> parse_rational_list(std::string_view text);

/// "7", "1/4", "16^(-1/2)" or products of such factors joined by '*'.
PowerProduct parse_power_product(std::string_view text);

/// "p:nu,p:nu,..." with p = "inf" allowed.
std::vector<BallSpec> parse_balls(std::string_view text);

struct SweepPlan {
  std::string varying;  // "q", "p<j>" or "r<j>" (1-based j)
  Rational from;
  Rational to;
  std::uint64_t steps = 1;
  ProblemSpec base;
};

/// Value of the swept parameter at a step: from + k(to − from)/(steps − 1).
Rational sweep_value(const SweepPlan& plan, std::uint64_t k);

inline constexpr std::string_view kSweepHeader =
    "varying,value,theta_num,theta_den,theta_decimal,regime,unique,compact,status";

/// CSV text (header + one row per step, in step order).
std::string run_sweep_csv(const SweepPlan& plan);

/// Grid resolution for one-shot queries: WIDTHCALC_GRID when set, else the oracle default.
/// Throws DomainError for a malformed value.
std::uint64_t grid_resolution(std::size_t d);

/// Runs the command line (args excludes the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace widthcalc::cli
