#pragma once

#include <string>
#include <vector>

#include "widthcalc/objective.hpp"
#include "widthcalc/params.hpp"

namespace widthcalc {

enum class Compactness { Compact, NotCompact, Boundary };

std::string compactness_name(Compactness c);

struct ExponentResult {
  Rational theta;
  Point argmin;
  bool unique = false;
  std::vector<PieceTag> active_pieces;
  Compactness compact = Compactness::Boundary;
};

/// h for q <= 2, h̃ for q > 2.
PiecewiseMax build_objective(const ProblemSpec& spec);

/// The q <= 2 construction applied for any q (no s dependence). This is the h that enters
/// the s = q/2 scaling identity and φ.
PiecewiseMax build_formal_h(const ProblemSpec& spec);

/// Exact epigraph LP: minimise t subject to t >= piece(α, s) for all pieces over the feasible set.
ExponentResult minimize(const PiecewiseMax& obj, const FeasibleSet& feas);

/// Convenience: build_objective + FeasibleSet::for_spec + minimize.
ExponentResult minimize(const ProblemSpec& spec);

/// True iff no nonzero feasible direction at result.argmin keeps every active piece from increasing.
bool uniqueness_check(const PiecewiseMax& obj, const FeasibleSet& feas, const ExponentResult& result);

/// ξ₁…ξ₄. Requires q > 2 and the regularity condition; throws DomainError otherwise.
std::vector<Point> candidate_vertices(const ProblemSpec& spec);

/// Inequality system characterising the region where the piece `tag` attains h̃.
/// Requires q > 2, no p_i in {2, q}, and a feasible point.
bool region_condition(const ProblemSpec& spec, const Point& x, const PieceTag& tag);

/// All tags admitted by the region conditions, in family order.
std::vector<PieceTag> region_tags(const ProblemSpec& spec);

/// First tag (in family order) whose region condition holds at x.
PieceTag classify_region(const ProblemSpec& spec, const Point& x);

}  // namespace widthcalc
