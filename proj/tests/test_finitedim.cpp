#include "doctest.h"

#include <cmath>

#include "support.hpp"
#include "widthcalc/exponent.hpp"
#include "widthcalc/finitedim.hpp"
#include "widthcalc/oracle.hpp"

using namespace widthcalc;
using testing::Q;
using testing::spec_of;

namespace {

LebesgueExponent L(const char* p) { return LebesgueExponent::parse(p); }
PowerProduct P(const char* base, const char* e) { return PowerProduct::power(Q(base), Q(e)); }
BallSpec ball(const char* p, const PowerProduct& nu) { return BallSpec{L(p), nu}; }

long double ld(const LebesgueExponent& p) {
  return p.is_inf() ? std::numeric_limits<long double>::infinity() : 1.0L / static_cast<long double>(p.inv.to_double());
}

}  // namespace

TEST_CASE("Lebesgue exponent parsing") {
  CHECK(L("inf").is_inf());
  CHECK(L("3/2").inv == Q("2/3"));
  CHECK_THROWS_AS(L("1/2"), DomainError);
  CHECK_THROWS_AS(L("2.5"), DomainError);
  CHECK(L("inf").greater_than(Rational(100)));
  CHECK(L("3").less_than(Rational(4)));
}

TEST_CASE("single ball examples") {
  const auto a = single_ball_order(L("2"), L("1"), 5, 10);
  CHECK(a.exact);
  CHECK(a.value == P("5", "1/2"));
  CHECK(single_ball_order(L("1"), L("2"), 50, 100).value.is_one());
  CHECK(single_ball_order(L("2"), L("4"), 8, 16).value == P("2", "-1/2"));
  CHECK_THROWS_AS(single_ball_order(L("2"), L("1"), 10, 10), RangeError);
  CHECK_THROWS_AS(single_ball_order(L("1"), L("2"), 9, 16), RangeError);
  CHECK_THROWS_AS(single_ball_order(L("2"), L("1"), 11, 10), RangeError);
}

TEST_CASE("intersection examples") {
  IntersectionSpec s{16, 4, Rational(2), {ball("inf", P("16", "-1/2")), ball("1", PowerProduct())}};
  const auto w = intersection_order(s);
  CHECK(w.value == PowerProduct::from_rational(Q("1/2")));
  CHECK(w.branch.rfind("cross-lambda", 0) == 0);
  CHECK(w.terms.size() == 3);

  // a single ball agrees with the single-ball formula when n^(-1/2)N^(1/q) <= 1
  IntersectionSpec one{64, 32, Rational(3), {ball("3/2", PowerProduct::from_integer(5))}};
  CHECK(intersection_order(one).value ==
        PowerProduct::from_integer(5) * single_ball_order(L("3/2"), L("3"), 32, 64).value);

  // nested balls: the larger one never wins
  IntersectionSpec nested{32, 4, Rational(2), {ball("3", PowerProduct::from_integer(2)), ball("3", PowerProduct::from_integer(1))}};
  CHECK(intersection_order(nested).branch == "ball[2]");

  IntersectionSpec too_small{256, 8, Rational(4), {ball("3", PowerProduct())}};
  CHECK_THROWS_AS(intersection_order(too_small), RangeError);
  IntersectionSpec too_big{16, 9, Rational(2), {ball("1", PowerProduct())}};
  CHECK_THROWS_AS(intersection_order(too_big), RangeError);
}

TEST_CASE("branch classification examples") {
  // ν_a = ν_b·16^(1/4 − 3/4): boundary case with l = k = N
  IntersectionSpec s{16, 4, Rational(2), {ball("4", P("16", "-1/2")), ball("4/3", PowerProduct())}};
  const auto c = classify_branch(s);
  CHECK(c.lemma == 1);
  CHECK(std::find(c.matching_cases.begin(), c.matching_cases.end(), 3) != c.matching_cases.end());
  REQUIRE(c.certificate.has_value());
  CHECK(c.certificate->verified());

  IntersectionSpec small{16, 4, Rational(2), {ball("4/3", PowerProduct::from_rational(Q("1/8"))), ball("3", PowerProduct())}};
  const auto c1 = classify_branch(small);
  CHECK(c1.label() == "lemma1.case1");
  REQUIRE(c1.certificate.has_value());
  CHECK(c1.certificate->kind == CertificateKind::B1Inclusion);
  CHECK(c1.certificate->verified());

  IntersectionSpec q4{256, 16, Rational(4), {ball("8", PowerProduct()), ball("3", PowerProduct())}};
  const auto c3 = classify_branch(q4);
  CHECK(c3.label() == "lemma2.case3");
  REQUIRE(c3.certificate.has_value());
  CHECK(c3.certificate->verified());
  // gl = 16^(-1/2)·256^(1/4) = 1, so the branch value is ν_a = 1
  CHECK(c3.certificate->symbolic_bound.is_one());
  CHECK(intersection_order(q4).value.is_one());
}

TEST_CASE("V_k lower bound examples") {
  CHECK(vk_lower_bound(1, 16, 4, Rational(2)).is_one());
  CHECK(vk_lower_bound(16, 256, 8, Rational(4)) == PowerProduct::from_integer(2));
  CHECK(vk_lower_bound(4, 256, 128, Rational(4)) == P("2", "-1/2"));
  CHECK_THROWS_AS(vk_lower_bound(0, 16, 4, Rational(2)), RangeError);
}

TEST_CASE("dyadic block examples") {
  const auto spec = spec_of({"3", "3"}, {"1", "1"}, "2");
  const auto s = dyadic_block_spec(spec, DyadicBlock{{3, 3}}, 8);
  CHECK(s.N == 64);
  REQUIRE(s.balls.size() == 2);
  CHECK(s.balls[0].nu == P("2", "-4"));
  CHECK(s.balls[1].nu == P("2", "-4"));
  CHECK(dyadic_block_spec(spec, DyadicBlock{{1, 1}}, 1).N == 4);
  CHECK(DyadicBlock{{1, 2, 3}}.m() == 6);
  CHECK_THROWS_AS(dyadic_block_spec(spec, DyadicBlock{{0, 1}}, 1), DomainError);
}

TEST_CASE("phi examples and homogeneity") {
  CHECK(phi(spec_of({"3", "3"}, {"1", "1"}, "2"), {Rational(1), Rational(1)}) == Rational(1));
  Lcg64 rng(53);
  for (int k = 0; k < 300; ++k) {
    const auto spec = testing::random_spec(rng, 4);
    const auto h = build_formal_h(spec);
    const Rational t = rng.rational_in(Rational(0), Rational(20));
    const auto alpha = testing::random_simplex_point(rng, spec.d(), Rational(1));
    std::vector<Rational> tv(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) tv[j] = alpha[j] * t;
    CAPTURE(spec.describe());
    CHECK(phi(spec, tv) == t * h.eval(Point{alpha, Rational(1)}));
  }
}

TEST_CASE("block value on a dyadic grid equals 2^(-psi)") {
  Lcg64 rng(59);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const auto spec = testing::random_spec_q_gt_2(rng, 3);
    std::vector<std::uint64_t> mv(spec.d());
    std::uint64_t m = 0;
    for (auto& v : mv) {
      v = 1 + rng.below(12);
      m += v;
    }
    if (m > 60) continue;
    // N^(2/q) <= n = 2^L <= N/2
    const Rational lo = Rational(2) * Rational(static_cast<std::int64_t>(m)) / spec.q;
    std::int64_t Lmin = 0;
    while (Rational(Lmin) < lo) ++Lmin;
    const auto Lmax = static_cast<std::int64_t>(m) - 1;
    if (Lmin > Lmax) continue;
    const std::int64_t Lexp = rng.between(Lmin, Lmax);
    std::vector<Rational> t;
    for (auto v : mv) t.emplace_back(static_cast<std::int64_t>(v));
    CAPTURE(spec.describe());
    const auto order = dyadic_block_order(spec, DyadicBlock{mv}, std::uint64_t{1} << Lexp);
    const auto log2 = order.value.exact_log2();
    REQUIRE(log2.has_value());
    CHECK(*log2 == -psi_n(spec, t, Rational(static_cast<std::int64_t>(m)), Rational(Lexp)));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("domination inequalities hold on sampled blocks") {
  Lcg64 rng(61);
  std::size_t pairs = 0;
  for (int k = 0; k < 100; ++k) {
    const auto spec = testing::random_spec_q_gt_2(rng, 4);
    for (int m = 0; m < 10; ++m) {
      std::vector<Rational> mv;
      for (std::size_t j = 0; j < spec.d(); ++j) mv.emplace_back(rng.between(1, 40));
      for (const auto& c : check_domination(spec, mv)) {
        CHECK(c.holds);
        CHECK(c.lhs <= c.rhs);
        ++pairs;
      }
    }
  }
  CHECK(pairs > 0);
  CHECK_THROWS_AS(check_domination(spec_of({"3", "3"}, {"1", "1"}, "2"), {Rational(1), Rational(1)}), DomainError);
}

TEST_CASE("intersection order properties") {
  Lcg64 rng(67);
  for (int k = 0; k < 300; ++k) {
    const IntersectionSpec spec = sample_intersection_spec(rng);
    const auto w = intersection_order(spec);
    // value is the minimum over all terms and names one of them
    bool named = false;
    for (const auto& t : w.terms) {
      CHECK(w.value <= t.value);
      named = named || (t.label == w.branch && t.value == w.value);
    }
    CHECK(named);

    // shrinking a radius never increases the order
    IntersectionSpec smaller = spec;
    const std::size_t a = rng.below(spec.balls.size());
    smaller.balls[a].nu = smaller.balls[a].nu * PowerProduct::from_rational(Q("1/2"));
    CHECK(intersection_order(smaller).value <= w.value);

    // brute-force long double evaluation
    std::vector<std::pair<long double, long double>> pn;
    for (const auto& b : spec.balls) pn.emplace_back(ld(b.p), static_cast<long double>(b.nu.to_double()));
    const long double bf = brute_force_intersection(spec.N, spec.n, static_cast<long double>(spec.q.to_double()), pn);
    CHECK(std::fabs(static_cast<double>(bf) / w.value.to_double() - 1.0) < 1e-9);

    const auto cls = classify_branch(spec);
    if (cls.certificate) {
      CHECK(cls.certificate->verified());
      CHECK(cls.certificate->symbolic_bound == w.value);
    }
  }
}
