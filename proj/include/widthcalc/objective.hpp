#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "widthcalc/params.hpp"
#include "widthcalc/rational.hpp"

namespace widthcalc {

/// Piece families of h (q <= 2) and h̃ (q > 2).
enum class Family { H1, H2, H3, HT1, HT2, HT3, HT4, HT5 };

std::string family_name(Family f);

/// Which family and which index (or index pair) produced a piece. Indices are 0-based;
/// single-index families store the index in both slots.
struct PieceTag {
  Family family = Family::H1;
  std::size_t i = 0;
  std::size_t j = 0;

  bool paired() const;
  std::string str() const;  // 1-based, e.g. "h3(1,2)" or "ht2(3)"
  friend bool operator==(const PieceTag&, const PieceTag&) = default;
};

/// A point (α₁…α_d, s). For the q <= 2 objective s is always 1.
struct Point {
  std::vector<Rational> alpha;
  Rational s{1};

  friend bool operator==(const Point&, const Point&) = default;
};

/// c·α + s_coeff·s + constant.
struct AffinePiece {
  std::vector<Rational> coeffs;
  Rational s_coeff;
  Rational constant;
  PieceTag tag;

  Rational eval(const Point& x) const;
};

struct PiecewiseMax {
  std::vector<AffinePiece> pieces;
  std::size_t dim = 0;
  bool has_s = false;

  /// Throws DomainError for an empty piece list (max over nothing is not a value).
  Rational eval(const Point& x) const;
  std::vector<PieceTag> active(const Point& x) const;
};

/// D = {α >= 0, Σα = 1} when s_upper = 1, else D̃ = {α >= 0, Σα = s, 1 <= s <= s_upper}.
struct FeasibleSet {
  std::size_t dim = 0;
  Rational s_lower{1};
  Rational s_upper{1};

  static FeasibleSet for_spec(const ProblemSpec& spec);
  bool contains(const Point& x) const;
};

}  // namespace widthcalc
