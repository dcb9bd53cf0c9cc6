#include "doctest.h"

#include <set>

#include "support.hpp"
#include "widthcalc/closedform.hpp"
#include "widthcalc/exponent.hpp"

using namespace widthcalc;
using testing::Q;
using testing::Qs;
using testing::spec_of;

namespace {

// d = 2 spec with p1 > q > p2 and r2 <= 1/p2 − 1/p1, randomly relabelled
ProblemSpec random_two_dim_ordered(Lcg64& rng) {
  const Rational q = rng.rational_in(Rational(1), Rational(6));
  const Rational p1 = rng.rational_in(q, Rational(12));
  const Rational p2 = rng.rational_in(Rational(1), q);
  const Rational gap = p2.inverse() - p1.inverse();
  const Rational r2 = rng.coin() ? gap : rng.rational_in(Rational(), gap);
  const Rational r1 = rng.rational_in(Rational(), Rational(4));
  if (rng.coin()) return ProblemSpec({p2, p1}, {r2, r1}, q);
  return ProblemSpec({p1, p2}, {r1, r2}, q);
}

}  // namespace

TEST_CASE("boundedness examples") {
  CHECK(check_bounded(spec_of({"3/2", "3/2"}, {"1", "1"}, "2")));
  CHECK(galeev_value(spec_of({"3/2", "3/2"}, {"1", "1"}, "2")) == Q("1/3"));
  // 1/2 + 1/2 − 1000/1001
  CHECK(galeev_value(spec_of({"1001/1000", "1001/1000"}, {"1", "1"}, "2")) == Q("1/1001"));
  CHECK(check_bounded(spec_of({"1001/1000", "1001/1000"}, {"1", "1"}, "2")));
  CHECK_FALSE(check_bounded(spec_of({"1001/1000", "1001/1000"}, {"1", "1"}, "3")));

  // 1/q = 2/3 − 1/2 gives q = 6: boundary, bounded but not compact
  const auto boundary = spec_of({"3/2", "3/2"}, {"1", "1"}, "6");
  CHECK(galeev_value(boundary) == Rational());
  CHECK(check_bounded(boundary));
  CHECK_FALSE(classify_regime(boundary).compact);
  CHECK(minimize(boundary).compact == Compactness::Boundary);
}

TEST_CASE("regularity and non-compactness criteria examples") {
  CHECK(check_dop_usl(spec_of({"3", "3", "3"}, {"1", "2", "1/2"}, "2")));
  CHECK_FALSE(check_dop_usl(spec_of({"2", "4/3"}, {"1", "1/4"}, "2")));
  CHECK(dop_usl_sums(spec_of({"2", "4/3"}, {"1", "1/4"}, "2"))[0] == Rational(1));
  CHECK(check_dop_usl(spec_of({"4", "4/3"}, {"1", "1"}, "2")));
  CHECK(dop_usl_sums(spec_of({"4", "4/3"}, {"1", "1"}, "2")) == Qs({"1/2", "-1/2"}));

  CHECK(check_noncompact_T3(spec_of({"2", "4/3"}, {"1", "1/4"}, "2")) == true);
  CHECK(check_noncompact_T3(spec_of({"3/2", "3/2"}, {"1", "1"}, "2")) == false);
  CHECK_FALSE(check_noncompact_T3(spec_of({"4", "4/3"}, {"1", "1"}, "2")).has_value());
  const auto rep = classify_regime(spec_of({"2", "4/3"}, {"1", "1/4"}, "2"));
  CHECK(rep.theorem_case == "T3-noncompact");
  CHECK_FALSE(rep.compact);
  CHECK_FALSE(rep.exponent.has_value());
}

TEST_CASE("general closed form examples") {
  const auto a = theorem1_exponent(spec_of({"3", "3"}, {"1", "1"}, "2"));
  CHECK(a.theorem_case == "T1.1");
  CHECK(a.exponent == Q("1/2"));
  const auto b = theorem1_exponent(spec_of({"3/2", "3/2"}, {"1", "1"}, "2"));
  CHECK(b.theorem_case == "T1.2a");
  CHECK(b.exponent == Q("1/3"));
  const auto c = theorem1_exponent(spec_of({"3", "3"}, {"1", "1"}, "4"));
  CHECK(c.theorem_case == "T1.3b");
  CHECK(c.exponent == Q("1/2"));
  CHECK(c.thetas.at("theta3") == Q("5/6"));

  // mixed q <= 2 with ⟨r⟩/⟨p∘r⟩ = 1/q: excluded limiting case
  const auto tie = theorem1_exponent(spec_of({"4", "4/3"}, {"1", "1"}, "2"));
  CHECK(tie.theorem_case == "uncovered");
  CHECK_FALSE(tie.exponent.has_value());
}

TEST_CASE("two-dimensional ordered closed form examples") {
  const auto a = theorem4_exponent(spec_of({"4", "4/3"}, {"1", "1/2"}, "2"));
  REQUIRE(a.has_value());
  CHECK(a->theorem_case == "T4.1");
  CHECK(a->exponent == Q("1/4"));
  CHECK(minimize(spec_of({"4", "4/3"}, {"1", "1/2"}, "2")).theta == Q("1/4"));

  const auto b = theorem4_exponent(spec_of({"8", "8/5"}, {"1", "1/4"}, "2"));
  REQUIRE(b.has_value());
  CHECK(b->thetas.at("theta1") == Q("1/5"));
  CHECK(b->thetas.at("lambda_r2") == Q("3/16"));
  CHECK(b->exponent == Q("3/16"));
  CHECK(minimize(spec_of({"8", "8/5"}, {"1", "1/4"}, "2")).theta == Q("3/16"));

  // q > 2, p₂ >= 2: ŝ = 10/7, λ = 3/5, ŝλr₂ = 3/28 < θ₁ = 1/9
  const auto spec = spec_of({"8", "3"}, {"1", "1/8"}, "4");
  const auto c = classify_regime(spec);
  CHECK(c.theorem_case == "T4.2a");
  CHECK(c.thetas.at("s_hat") == Q("10/7"));
  CHECK(c.exponent == Q("3/28"));
  CHECK(minimize(spec).theta == Q("3/28"));

  CHECK_FALSE(theorem4_exponent(spec_of({"3", "3", "3"}, {"1", "1", "1"}, "2")).has_value());
  CHECK_FALSE(theorem4_exponent(spec_of({"4", "4/3"}, {"1", "1"}, "2")).has_value());  // r₂ > 1/p₂ − 1/p₁
}

TEST_CASE("two-dimensional ordered formula agrees with the LP and keeps ŝ in range") {
  Lcg64 rng(41);
  int with_exponent = 0;
  for (int k = 0; k < 600; ++k) {
    const ProblemSpec spec = random_two_dim_ordered(rng);
    CAPTURE(spec.describe());
    const auto rep = theorem4_exponent(spec);
    REQUIRE(rep.has_value());
    if (!spec.q_le_2()) {
      const Rational s_hat = rep->thetas.at("s_hat");
      CHECK(s_hat >= Rational(1));
      CHECK(s_hat <= spec.q / Rational(2));
    }
    if (rep->exponent) {
      ++with_exponent;
      CHECK(*rep->exponent == minimize(spec).theta);
    }
  }
  CHECK(with_exponent > 300);
}

TEST_CASE("regime classification is total and consistent with the LP") {
  const std::set<std::string> labels = {"T1.1", "T1.2a", "T1.2b", "T1.3a", "T1.3b", "T1.3c", "T4.1",
                                        "T4.2a", "T4.2b", "T3-noncompact", "not-compact", "uncovered"};
  Lcg64 rng(43);
  for (int k = 0; k < 500; ++k) {
    const ProblemSpec spec = testing::random_spec(rng, 4);
    CAPTURE(spec.describe());
    const auto rep = classify_regime(spec);
    CHECK(labels.count(rep.theorem_case) == 1);
    const auto lp = minimize(spec);
    if (rep.exponent) {
      bool listed = false;
      for (const auto& [name, value] : rep.thetas) listed = listed || value == *rep.exponent;
      CHECK(listed);
      if (lp.unique) CHECK(*rep.exponent == lp.theta);
    }
    if (rep.theorem_case == "T3-noncompact") {
      CHECK_FALSE(rep.compact);
      CHECK(lp.theta <= Rational());
    }
    const auto t1 = theorem1_exponent(spec);
    if (t1.exponent && lp.unique) CHECK(*t1.exponent == lp.theta);
  }
}
