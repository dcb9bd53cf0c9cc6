#include "widthcalc/objective.hpp"

namespace widthcalc {

std::string family_name(Family f) {
  switch (f) {
    case Family::H1: return "h1";
    case Family::H2: return "h2";
    case Family::H3: return "h3";
    case Family::HT1: return "ht1";
    case Family::HT2: return "ht2";
    case Family::HT3: return "ht3";
    case Family::HT4: return "ht4";
    case Family::HT5: return "ht5";
  }
  return "?";
}

bool PieceTag::paired() const {
  return family == Family::H3 || family == Family::HT4 || family == Family::HT5;
}

std::string PieceTag::str() const {
  if (paired()) return family_name(family) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  return family_name(family) + "(" + std::to_string(j + 1) + ")";
}

Rational AffinePiece::eval(const Point& x) const {
  Rational v = constant + s_coeff * x.s;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) v += coeffs[k] * x.alpha[k];
  }
  return v;
}

Rational PiecewiseMax::eval(const Point& x) const {
  if (pieces.empty()) throw DomainError("objective has no pieces");
  Rational best = pieces.front().eval(x);
  for (std::size_t k = 1; k < pieces.size(); ++k) best = max(best, pieces[k].eval(x));
  return best;
}

std::vector<PieceTag> PiecewiseMax::active(const Point& x) const {
  const Rational v = eval(x);
  std::vector<PieceTag> out;
  for (const auto& piece : pieces) {
    if (piece.eval(x) == v) out.push_back(piece.tag);
  }
  return out;
}

FeasibleSet FeasibleSet::for_spec(const ProblemSpec& spec) {
  FeasibleSet f;
  f.dim = spec.d();
  f.s_lower = Rational(1);
  f.s_upper = spec.q_le_2() ? Rational(1) : spec.q / Rational(2);
  return f;
}

bool FeasibleSet::contains(const Point& x) const {
  if (x.alpha.size() != dim) return false;
  if (x.s < s_lower || x.s > s_upper) return false;
  Rational sum;
  for (const auto& a : x.alpha) {
    if (a.sign() < 0) return false;
    sum += a;
  }
  return sum == x.s;
}

}  // namespace widthcalc
