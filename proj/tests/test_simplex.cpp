#include "doctest.h"

#include <optional>

#include "simplex.hpp"
#include "support.hpp"

using namespace widthcalc;
using namespace widthcalc::detail;
using testing::Q;

namespace {

Constraint row(std::initializer_list<const char*> coeffs, Sense sense, const char* rhs) {
  Constraint c;
  for (const char* s : coeffs) c.coeffs.push_back(Q(s));
  c.sense = sense;
  c.rhs = Q(rhs);
  return c;
}

}  // namespace

TEST_CASE("simplex survives the classic cycling instance") {
  LinearProgram lp;
  lp.num_vars = 4;
  lp.objective = {Q("-3/4"), Q("20"), Q("-1/2"), Q("6")};
  lp.rows.push_back(row({"1/4", "-8", "-1", "9"}, Sense::LE, "0"));
  lp.rows.push_back(row({"1/2", "-12", "-1/2", "3"}, Sense::LE, "0"));
  lp.rows.push_back(row({"0", "0", "1", "0"}, Sense::LE, "1"));
  const auto sol = solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Q("-5/4"));
}

TEST_CASE("simplex status detection") {
  LinearProgram infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {Q("1")};
  infeasible.rows.push_back(row({"1"}, Sense::GE, "2"));
  infeasible.rows.push_back(row({"1"}, Sense::LE, "1"));
  CHECK(solve(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded;
  unbounded.num_vars = 2;
  unbounded.objective = {Q("-1"), Q("0")};
  unbounded.rows.push_back(row({"1", "-1"}, Sense::LE, "1"));
  CHECK(solve(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("simplex with redundant equalities returns a vertex") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Q("1"), Q("-1")};
  lp.rows.push_back(row({"1", "1"}, Sense::EQ, "1"));
  lp.rows.push_back(row({"2", "2"}, Sense::EQ, "2"));
  const auto sol = solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(-1));
  CHECK(sol.x == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("simplex optimum matches vertex enumeration on random 2-variable programs") {
  Lcg64 rng(5);
  for (int k = 0; k < 300; ++k) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {rng.rational_in(Rational(-5), Rational(5)), rng.rational_in(Rational(-5), Rational(5))};
    std::vector<Constraint> rows;
    for (int r = 0; r < 4; ++r) {
      Constraint c;
      c.coeffs = {rng.rational_in(Rational(0), Rational(5)), rng.rational_in(Rational(0), Rational(5))};
      c.sense = Sense::LE;
      c.rhs = rng.rational_in(Rational(0), Rational(10));
      rows.push_back(c);
    }
    lp.rows = rows;
    const auto sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);

    // candidate vertices: intersections of every pair among rows and the two axes
    std::vector<Constraint> lines = rows;
    lines.push_back(row({"1", "0"}, Sense::EQ, "0"));
    lines.push_back(row({"0", "1"}, Sense::EQ, "0"));
    std::optional<Rational> best;
    for (std::size_t a = 0; a < lines.size(); ++a) {
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        const Rational det = lines[a].coeffs[0] * lines[b].coeffs[1] - lines[a].coeffs[1] * lines[b].coeffs[0];
        if (det.is_zero()) continue;
        const Rational x = (lines[a].rhs * lines[b].coeffs[1] - lines[a].coeffs[1] * lines[b].rhs) / det;
        const Rational y = (lines[a].coeffs[0] * lines[b].rhs - lines[a].rhs * lines[b].coeffs[0]) / det;
        if (x < Rational() || y < Rational()) continue;
        bool ok = true;
        for (const auto& c : rows) ok = ok && c.coeffs[0] * x + c.coeffs[1] * y <= c.rhs;
        if (!ok) continue;
        const Rational v = lp.objective[0] * x + lp.objective[1] * y;
        if (!best || v < *best) best = v;
      }
    }
    REQUIRE(best.has_value());
    CHECK(sol.value == *best);
  }
}
