#include "widthcalc/closedform.hpp"

#include <algorithm>
#include <utility>

namespace widthcalc {

namespace {

bool all_of_p(const ProblemSpec& spec, auto pred) {
  return std::all_of(spec.p.begin(), spec.p.end(), pred);
}

bool any_of_p(const ProblemSpec& spec, auto pred) {
  return std::any_of(spec.p.begin(), spec.p.end(), pred);
}

// Index of the strict minimum, or -1 when the minimum is attained more than once.
int strict_argmin(const std::vector<Rational>& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] < v[best]) best = k;
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k != best && v[k] == v[best]) return -1;
  }
  return static_cast<int>(best);
}

void settle_min(RegimeReport& rep, std::string label, const std::vector<Rational>& candidates) {
  const int k = strict_argmin(candidates);
  if (k < 0) {
    rep.tie = true;
    rep.theorem_case = "uncovered";
    rep.note = label + " excluded: two candidate exponents coincide";
    return;
  }
  rep.theorem_case = std::move(label);
  rep.exponent = candidates[static_cast<std::size_t>(k)];
}

}  // namespace

bool check_bounded(const ProblemSpec& spec) { return galeev_value(spec).sign() >= 0; }

std::vector<Rational> dop_usl_sums(const ProblemSpec& spec) {
  std::vector<Rational> sums(spec.d());
  for (std::size_t j = 0; j < spec.d(); ++j) {
    Rational s;
    for (std::size_t i = 0; i < spec.d(); ++i) s += spec.r[i].inverse() * (spec.inv_p(i) - spec.inv_p(j));
    sums[j] = s;
  }
  return sums;
}

bool check_dop_usl(const ProblemSpec& spec) {
  const auto sums = dop_usl_sums(spec);
  return std::all_of(sums.begin(), sums.end(), [](const Rational& s) { return s < Rational(1); });
}

std::optional<bool> check_noncompact_T3(const ProblemSpec& spec) {
  if (any_of_p(spec, [&](const Rational& p) { return p > spec.q; })) return std::nullopt;
  const auto sums = dop_usl_sums(spec);
  return std::any_of(sums.begin(), sums.end(), [](const Rational& s) { return s >= Rational(1); });
}

RegimeReport theorem1_exponent(const ProblemSpec& spec) {
  RegimeReport rep;
  const Rational g = galeev_value(spec);
  const Rational d(static_cast<std::int64_t>(spec.d()));
  const Rational theta1 = harmonic_mean(spec.r) / d;
  rep.bounded = g.sign() >= 0;
  rep.compact = g.sign() > 0;
  rep.dop_usl_holds = check_dop_usl(spec);
  rep.thetas["theta1"] = theta1;
  rep.thetas["galeev"] = g;

  if (g.sign() <= 0) {
    rep.note = "Galeev value is not positive";
    return rep;
  }
  const Rational two(2);
  if (all_of_p(spec, [&](const Rational& p) { return p >= spec.q; })) {
    rep.theorem_case = "T1.1";
    rep.exponent = theta1;
    if (!rep.dop_usl_holds) rep.note = "regularity condition fails; case 1 holds regardless";
    return rep;
  }
  if (!rep.dop_usl_holds) {
    rep.note = "regularity condition fails";
    return rep;
  }
  if (spec.q_le_2()) {
    if (all_of_p(spec, [&](const Rational& p) { return p <= spec.q; })) {
      rep.theorem_case = "T1.2a";
      rep.exponent = g;
      return rep;
    }
    // Mixed: some p > q and some p < q. The excluded relation ⟨r⟩/⟨p∘r⟩ = 1/q is exactly g = θ₁.
    settle_min(rep, "T1.2b", {theta1, g});
    return rep;
  }

  const Rational theta2 = g - spec.inv_q() + Rational(1, 2);
  const Rational theta3 = spec.q / two * g;
  rep.thetas["theta2"] = theta2;
  rep.thetas["theta3"] = theta3;
  if (all_of_p(spec, [&](const Rational& p) { return p <= two; })) {
    settle_min(rep, "T1.3a", {theta2, theta3});
  } else if (all_of_p(spec, [&](const Rational& p) { return p >= two; })) {
    settle_min(rep, "T1.3b", {theta1, theta3});
  } else {
    settle_min(rep, "T1.3c", {theta1, theta2, theta3});
  }
  return rep;
}

std::optional<RegimeReport> theorem4_exponent(const ProblemSpec& spec) {
  if (spec.d() != 2 || spec.p[0] == spec.p[1]) return std::nullopt;
  const std::size_t a = spec.p[0] > spec.p[1] ? 0 : 1;  // larger p
  const std::size_t b = 1 - a;
  const Rational& p1 = spec.p[a];
  const Rational& p2 = spec.p[b];
  const Rational& r1 = spec.r[a];
  const Rational& r2 = spec.r[b];
  const Rational gap = p2.inverse() - p1.inverse();
  if (!(p2 < spec.q && spec.q < p1) || r2 > gap) return std::nullopt;

  RegimeReport rep;
  rep.bounded = check_bounded(spec);
  rep.dop_usl_holds = check_dop_usl(spec);
  const Rational theta1 = Rational(1) / (r1.inverse() + r2.inverse());
  const Rational lambda = interpolation_weight(p1.inverse(), p2.inverse(), spec.inv_q());
  rep.thetas["theta1"] = theta1;
  if (spec.q_le_2()) {
    rep.thetas["lambda_r2"] = lambda * r2;
    settle_min(rep, "T4.1", {theta1, lambda * r2});
  } else {
    const Rational s_hat = Rational(1) / (Rational(1) - r2 * (Rational(1) - Rational(2) / spec.q) / gap);
    rep.thetas["s_hat"] = s_hat;
    rep.thetas["s_hat_lambda_r2"] = s_hat * lambda * r2;
    if (p2 >= Rational(2)) {
      settle_min(rep, "T4.2a", {theta1, s_hat * lambda * r2});
    } else {
      const Rational mu = interpolation_weight(p1.inverse(), p2.inverse(), Rational(1, 2));
      rep.thetas["mu_r2"] = mu * r2;
      // strict minimum, same rule as T1.3c
      settle_min(rep, "T4.2b", {theta1, s_hat * lambda * r2, mu * r2});
    }
  }
  rep.compact = rep.exponent.has_value() && rep.exponent->sign() > 0;
  if (rep.exponent && !rep.bounded) rep.note = "Galeev value is negative although the d = 2 formula is positive";
  return rep;
}

RegimeReport classify_regime(const ProblemSpec& spec) {
  const auto t3 = check_noncompact_T3(spec);
  if (t3.value_or(false)) {
    RegimeReport rep;
    rep.bounded = check_bounded(spec);
    rep.compact = false;
    rep.dop_usl_holds = false;
    rep.theorem_case = "T3-noncompact";
    rep.thetas["galeev"] = galeev_value(spec);
    rep.note = "non-compactness criterion holds";
    return rep;
  }
  RegimeReport t1 = theorem1_exponent(spec);
  if (t1.exponent || t1.tie) return t1;
  if (auto t4 = theorem4_exponent(spec)) {
    if (t4->exponent || t4->tie) return *t4;
  }
  if (!t1.compact) {
    t1.theorem_case = "not-compact";
    t1.note = "Galeev value is not positive";
  }
  return t1;
}

}  // namespace widthcalc
