#pragma once

#include <cstddef>
#include <vector>

#include "widthcalc/rational.hpp"

namespace widthcalc::detail {

enum class Sense { LE, EQ, GE };

struct Constraint {
  std::vector<Rational> coeffs;
  Sense sense = Sense::LE;
  Rational rhs;
};

/// minimize objective·x subject to the rows and x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Two-phase dense tableau simplex in exact arithmetic, Bland's rule throughout.
/// The returned x is a basic feasible solution, i.e. a vertex of the feasible region.
LpSolution solve(const LinearProgram& lp);

}  // namespace widthcalc::detail
