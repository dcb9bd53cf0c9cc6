#include "widthcalc/exponent.hpp"

#include <stdexcept>

#include "simplex.hpp"
#include "widthcalc/closedform.hpp"

namespace widthcalc {

using detail::Constraint;
using detail::LinearProgram;
using detail::LpStatus;
using detail::Sense;

std::string compactness_name(Compactness c) {
  switch (c) {
    case Compactness::Compact: return "compact";
    case Compactness::NotCompact: return "not-compact";
    case Compactness::Boundary: return "boundary";
  }
  return "?";
}

namespace {

AffinePiece single(const ProblemSpec& spec, Family f, std::size_t j, Rational s_coeff, Rational constant) {
  AffinePiece piece;
  piece.coeffs.assign(spec.d(), Rational());
  piece.coeffs[j] = spec.r[j];
  piece.s_coeff = std::move(s_coeff);
  piece.constant = std::move(constant);
  piece.tag = PieceTag{f, j, j};
  return piece;
}

AffinePiece pair(const ProblemSpec& spec, Family f, std::size_t i, std::size_t j, const Rational& w,
                 Rational s_coeff, Rational constant) {
  AffinePiece piece;
  piece.coeffs.assign(spec.d(), Rational());
  piece.coeffs[i] = (Rational(1) - w) * spec.r[i];
  piece.coeffs[j] = w * spec.r[j];
  piece.s_coeff = std::move(s_coeff);
  piece.constant = std::move(constant);
  piece.tag = PieceTag{f, i, j};
  return piece;
}

PiecewiseMax formal_h(const ProblemSpec& spec) {
  PiecewiseMax obj;
  obj.dim = spec.d();
  obj.has_s = false;
  const std::size_t d = spec.d();
  for (std::size_t j = 0; j < d; ++j) {
    if (spec.p[j] >= spec.q) obj.pieces.push_back(single(spec, Family::H1, j, Rational(), Rational()));
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (spec.p[j] <= spec.q) {
      obj.pieces.push_back(single(spec, Family::H2, j, Rational(), spec.inv_q() - spec.inv_p(j)));
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(spec.p[i] > spec.q)) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (!(spec.p[j] < spec.q)) continue;
      const Rational lam = interpolation_weight(spec.inv_p(i), spec.inv_p(j), spec.inv_q());
      obj.pieces.push_back(pair(spec, Family::H3, i, j, lam, Rational(), Rational()));
    }
  }
  return obj;
}

PiecewiseMax tilde_h(const ProblemSpec& spec) {
  const IndexPartition part = partition_indices(spec);
  const InterpCoeffs coeffs(spec, part);
  const Rational half(1, 2);
  const Rational denom = half - spec.inv_q();
  PiecewiseMax obj;
  obj.dim = spec.d();
  obj.has_s = true;
  for (std::size_t j : part.I) obj.pieces.push_back(single(spec, Family::HT1, j, Rational(), Rational()));
  for (std::size_t j : part.J) {
    const Rational c = (spec.inv_p(j) - spec.inv_q()) / denom;
    obj.pieces.push_back(single(spec, Family::HT2, j, -(half * c), half * c));
  }
  for (std::size_t j : part.K) obj.pieces.push_back(single(spec, Family::HT3, j, -spec.inv_p(j), half));
  for (std::size_t i : part.Ip) {
    for (std::size_t j = 0; j < spec.d(); ++j) {
      if (!coeffs.lambda_defined(i, j)) continue;
      obj.pieces.push_back(pair(spec, Family::HT4, i, j, coeffs.lambda(i, j), Rational(), Rational()));
    }
  }
  for (std::size_t i = 0; i < spec.d(); ++i) {
    for (std::size_t j : part.Kp) {
      if (!coeffs.mu_defined(i, j)) continue;
      obj.pieces.push_back(pair(spec, Family::HT5, i, j, coeffs.mu(i, j), -half, half));
    }
  }
  return obj;
}

Compactness verdict(const Rational& theta) {
  if (theta.sign() > 0) return Compactness::Compact;
  if (theta.sign() < 0) return Compactness::NotCompact;
  return Compactness::Boundary;
}

}  // namespace

PiecewiseMax build_objective(const ProblemSpec& spec) {
  return spec.q_le_2() ? formal_h(spec) : tilde_h(spec);
}

PiecewiseMax build_formal_h(const ProblemSpec& spec) { return formal_h(spec); }

ExponentResult minimize(const PiecewiseMax& obj, const FeasibleSet& feas) {
  if (obj.pieces.empty()) throw DomainError("objective has no pieces");
  const std::size_t d = obj.dim;
  const std::size_t s_col = d;
  const std::size_t tp = d + 1;
  const std::size_t tm = d + 2;

  LinearProgram lp;
  lp.num_vars = d + 3;
  lp.objective.assign(lp.num_vars, Rational());
  lp.objective[tp] = Rational(1);
  lp.objective[tm] = Rational(-1);

  for (const auto& piece : obj.pieces) {
    Constraint row;
    row.coeffs.assign(lp.num_vars, Rational());
    for (std::size_t j = 0; j < d; ++j) row.coeffs[j] = piece.coeffs[j];
    row.coeffs[s_col] = piece.s_coeff;
    row.coeffs[tp] = Rational(-1);
    row.coeffs[tm] = Rational(1);
    row.sense = Sense::LE;
    row.rhs = -piece.constant;
    lp.rows.push_back(std::move(row));
  }
  Constraint simplex_row;
  simplex_row.coeffs.assign(lp.num_vars, Rational());
  for (std::size_t j = 0; j < d; ++j) simplex_row.coeffs[j] = Rational(1);
  simplex_row.coeffs[s_col] = Rational(-1);
  simplex_row.sense = Sense::EQ;
  lp.rows.push_back(simplex_row);

  Constraint s_row;
  s_row.coeffs.assign(lp.num_vars, Rational());
  s_row.coeffs[s_col] = Rational(1);
  if (feas.s_lower == feas.s_upper) {
    s_row.sense = Sense::EQ;
    s_row.rhs = feas.s_lower;
    lp.rows.push_back(s_row);
  } else {
    s_row.sense = Sense::GE;
    s_row.rhs = feas.s_lower;
    lp.rows.push_back(s_row);
    s_row.sense = Sense::LE;
    s_row.rhs = feas.s_upper;
    lp.rows.push_back(s_row);
  }

  const auto sol = detail::solve(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("epigraph program has no optimum");

  ExponentResult result;
  result.argmin.alpha.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(d));
  result.argmin.s = sol.x[s_col];
  result.theta = obj.eval(result.argmin);
  if (result.theta != sol.value) throw std::logic_error("epigraph optimum does not match objective value");
  result.active_pieces = obj.active(result.argmin);
  result.compact = verdict(result.theta);
  result.unique = uniqueness_check(obj, feas, result);
  return result;
}

ExponentResult minimize(const ProblemSpec& spec) {
  return minimize(build_objective(spec), FeasibleSet::for_spec(spec));
}

bool uniqueness_check(const PiecewiseMax& obj, const FeasibleSet& feas, const ExponentResult& result) {
  // Directions v = w - 1 with w in [0, 2]^(d+1); the last coordinate moves s.
  const std::size_t d = obj.dim;
  const std::size_t n = d + 1;
  const Point& x = result.argmin;
  const Rational theta = obj.eval(x);

  LinearProgram base;
  base.num_vars = n;
  auto row = [&](Sense sense, Rational rhs) {
    Constraint c;
    c.coeffs.assign(n, Rational());
    c.sense = sense;
    c.rhs = std::move(rhs);
    return c;
  };

  Constraint sum = row(Sense::EQ, Rational(static_cast<std::int64_t>(d) - 1));
  for (std::size_t j = 0; j < d; ++j) sum.coeffs[j] = Rational(1);
  sum.coeffs[d] = Rational(-1);
  base.rows.push_back(sum);

  Constraint sdir = row(Sense::EQ, Rational(1));
  sdir.coeffs[d] = Rational(1);
  if (feas.s_lower == feas.s_upper) {
    base.rows.push_back(sdir);
  } else if (x.s == feas.s_lower) {
    sdir.sense = Sense::GE;
    base.rows.push_back(sdir);
  } else if (x.s == feas.s_upper) {
    sdir.sense = Sense::LE;
    base.rows.push_back(sdir);
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (x.alpha[j].is_zero()) {
      Constraint c = row(Sense::GE, Rational(1));
      c.coeffs[j] = Rational(1);
      base.rows.push_back(c);
    }
  }
  for (const auto& piece : obj.pieces) {
    if (piece.eval(x) != theta) continue;
    Rational rhs = piece.s_coeff;
    for (const auto& c : piece.coeffs) rhs += c;
    Constraint c = row(Sense::LE, rhs);
    for (std::size_t j = 0; j < d; ++j) c.coeffs[j] = piece.coeffs[j];
    c.coeffs[d] = piece.s_coeff;
    base.rows.push_back(c);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Constraint c = row(Sense::LE, Rational(2));
    c.coeffs[j] = Rational(1);
    base.rows.push_back(c);
  }

  for (std::size_t j = 0; j < d; ++j) {
    for (int sign : {1, -1}) {
      LinearProgram lp = base;
      lp.objective.assign(n, Rational());
      lp.objective[j] = Rational(sign);
      const auto sol = detail::solve(lp);
      if (sol.status != LpStatus::Optimal) throw std::logic_error("direction program failed");
      if (sol.x[j] != Rational(1)) return false;
    }
  }
  return true;
}

std::vector<Point> candidate_vertices(const ProblemSpec& spec) {
  if (spec.q_le_2()) throw DomainError("candidate vertices are defined for q > 2");
  if (!check_dop_usl(spec)) throw DomainError("regularity condition fails; second candidate leaves the simplex");
  const std::size_t d = spec.d();
  Rational R;
  for (const auto& r : spec.r) R += r.inverse();
  const auto sums = dop_usl_sums(spec);
  const Rational half_q = spec.q / Rational(2);

  std::vector<Point> pts(4);
  for (auto& pt : pts) pt.alpha.assign(d, Rational());
  for (std::size_t j = 0; j < d; ++j) {
    pts[0].alpha[j] = spec.r[j].inverse() / R;
    pts[1].alpha[j] = (Rational(1) - sums[j]) / (spec.r[j] * R);
    pts[2].alpha[j] = half_q * pts[1].alpha[j];
    pts[3].alpha[j] = half_q * pts[0].alpha[j];
  }
  pts[0].s = pts[1].s = Rational(1);
  pts[2].s = pts[3].s = half_q;
  return pts;
}

namespace {

void require_region_preconditions(const ProblemSpec& spec, const Point& x) {
  if (spec.q_le_2()) throw DomainError("region conditions are stated for q > 2");
  for (const auto& p : spec.p) {
    if (p == Rational(2) || p == spec.q) throw DomainError("region conditions require p_i not in {2, q}");
  }
  if (!FeasibleSet::for_spec(spec).contains(x)) throw DomainError("point is not feasible");
}

}  // namespace

bool region_condition(const ProblemSpec& spec, const Point& x, const PieceTag& tag) {
  require_region_preconditions(spec, x);
  const std::size_t d = spec.d();
  const IndexPartition part = partition_indices(spec);
  std::vector<Rational> a(d);
  for (std::size_t k = 0; k < d; ++k) a[k] = spec.r[k] * x.alpha[k];
  const Rational c = Rational(1, 2) / (Rational(1, 2) - spec.inv_q());
  const Rational s1 = x.s - Rational(1);
  auto ip = [&](std::size_t k) { return spec.inv_p(k); };
  const std::size_t i = tag.i;
  const std::size_t j = tag.j;

  switch (tag.family) {
    case Family::HT1:
      if (!contains(part.I, j)) return false;
      for (std::size_t k = 0; k < d; ++k) {
        if (a[j] - a[k] < Rational()) return false;
      }
      return true;
    case Family::HT2:
      if (!contains(part.J, j)) return false;
      for (std::size_t k = 0; k < d; ++k) {
        if (a[j] - a[k] < c * (ip(j) - ip(k)) * s1) return false;
      }
      return true;
    case Family::HT3:
      if (!contains(part.K, j)) return false;
      for (std::size_t k = 0; k < d; ++k) {
        if (a[j] - a[k] < x.s * ip(j) - x.s * ip(k)) return false;
      }
      return true;
    case Family::HT4: {
      if (!contains(part.I, i) || !(contains(part.J, j) || contains(part.K, j))) return false;
      const Rational diff = a[i] - a[j];
      if (diff > Rational()) return false;
      if (diff < c * (ip(i) - ip(j)) * s1) return false;
      const Rational slope = diff / (ip(i) - ip(j));
      for (std::size_t k = 0; k < d; ++k) {
        if ((contains(part.J, k) || contains(part.K, k)) && k != j) {
          if (slope < (a[i] - a[k]) / (ip(i) - ip(k))) return false;
        }
        if (contains(part.I, k) && k != i) {
          if (slope > (a[k] - a[j]) / (ip(k) - ip(j))) return false;
        }
      }
      return true;
    }
    case Family::HT5: {
      if (!(contains(part.I, i) || contains(part.J, i)) || !contains(part.K, j)) return false;
      const Rational diff = a[i] - a[j];
      if (diff > c * (ip(i) - ip(j)) * s1) return false;
      if (diff < x.s * ip(i) - x.s * ip(j)) return false;
      const Rational slope = diff / (ip(i) - ip(j));
      for (std::size_t k = 0; k < d; ++k) {
        if (contains(part.K, k) && k != j) {
          if (slope < (a[i] - a[k]) / (ip(i) - ip(k))) return false;
        }
        if ((contains(part.I, k) || contains(part.J, k)) && k != i) {
          if (slope > (a[k] - a[j]) / (ip(k) - ip(j))) return false;
        }
      }
      return true;
    }
    default:
      return false;
  }
}

std::vector<PieceTag> region_tags(const ProblemSpec& spec) {
  std::vector<PieceTag> tags;
  for (const auto& piece : build_objective(spec).pieces) tags.push_back(piece.tag);
  return tags;
}

PieceTag classify_region(const ProblemSpec& spec, const Point& x) {
  require_region_preconditions(spec, x);
  for (const auto& tag : region_tags(spec)) {
    if (region_condition(spec, x, tag)) return tag;
  }
  throw std::logic_error("no region condition holds at a feasible point");
}

}  // namespace widthcalc
