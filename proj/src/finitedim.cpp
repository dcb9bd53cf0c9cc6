#include "widthcalc/finitedim.hpp"

#include <algorithm>

namespace widthcalc {

namespace {

Rational to_rational(std::uint64_t v) {
  return Rational(mpq_class(mpz_class(std::to_string(v))));
}

PowerProduct pp_pow(std::uint64_t base, const Rational& e) { return PowerProduct::power(to_rational(base), e); }

const Rational kHalf(1, 2);

std::string idx(std::size_t a) { return std::to_string(a + 1); }

// (n^{1/2} N^{-1/q})
PowerProduct inverse_gluskin_base(std::uint64_t n, std::uint64_t N, const Rational& q) {
  return pp_pow(n, kHalf) * pp_pow(N, -q.inverse());
}

PowerProduct vk_expr(const PowerProduct& k, std::uint64_t N, std::uint64_t n, const Rational& q) {
  const Rational iq = q.inverse();
  if (q <= Rational(2)) return k.pow(iq);
  const PowerProduct threshold = min(pp_pow(N, Rational(2) * iq) * k.pow(Rational(1) - Rational(2) * iq),
                                     PowerProduct::from_rational(to_rational(N) / Rational(2)));
  if (PowerProduct::from_integer(n) <= threshold) return k.pow(iq);
  return k.pow(kHalf) * pp_pow(n, -kHalf) * pp_pow(N, iq);
}

// ν_a^{1-w} ν_b^{w}
PowerProduct interp(const PowerProduct& na, const PowerProduct& nb, const Rational& w) {
  return na.pow(Rational(1) - w) * nb.pow(w);
}

Rational weight(const LebesgueExponent& pa, const LebesgueExponent& pb, const Rational& inv_target) {
  return interpolation_weight(pa.inv, pb.inv, inv_target);
}

void check_ranges(const IntersectionSpec& spec) {
  if (spec.balls.empty()) throw DomainError("intersection needs at least one ball");
  if (spec.N < 1) throw RangeError("N must be positive");
  if (spec.N > (std::uint64_t{1} << 62)) throw RangeError("N exceeds 2^62");
  if (spec.q < Rational(1)) throw DomainError("q must be at least 1");
  if (2 * spec.n > spec.N) throw RangeError("n > N/2: the order formulas are proved only for n <= N/2");
  if (spec.q > Rational(2)) {
    if (spec.n == 0 || pp_pow(spec.N, Rational(2) / spec.q) > PowerProduct::from_integer(spec.n)) {
      throw RangeError("n < N^(2/q): the order formula for q > 2 is proved only for N^(2/q) <= n");
    }
  }
}

}  // namespace

LebesgueExponent LebesgueExponent::finite(const Rational& p) {
  if (p < Rational(1)) throw DomainError("Lebesgue exponent must be at least 1");
  return LebesgueExponent{p.inverse()};
}

LebesgueExponent LebesgueExponent::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "infinity") return infinity();
  return finite(Rational::parse(text));
}

std::string LebesgueExponent::str() const { return is_inf() ? "inf" : inv.inverse().str(); }

std::string certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::B1Inclusion: return "B1-inclusion";
    case CertificateKind::BinfInclusion: return "Binf-inclusion";
    case CertificateKind::VkInclusion: return "Vk-inclusion";
  }
  return "?";
}

bool LowerBoundCertificate::verified() const {
  return std::all_of(checked.begin(), checked.end(), [](const CertificateInequality& c) {
    return c.holds && c.lhs <= c.rhs;
  });
}

std::string BranchClassification::label() const {
  if (lemma_case == 0) return "unclassified";
  return "lemma" + std::to_string(lemma) + ".case" + std::to_string(lemma_case);
}

WidthOrder single_ball_order(const LebesgueExponent& p, const LebesgueExponent& q, std::uint64_t n, std::uint64_t N) {
  if (N < 1) throw RangeError("N must be positive");
  if (n > N) throw RangeError("n must not exceed N");
  WidthOrder out;
  if (q.inv >= p.inv) {  // q <= p
    if (n == N) throw RangeError("n = N gives the zero width; the exact formula needs n < N");
    out.value = pp_pow(N - n, q.inv - p.inv);
    out.branch = "theorem-D";
    out.exact = true;
  } else {
    if (q.is_inf()) throw DomainError("q = inf with p < q is outside the single-ball theorems");
    if (2 * n > N) throw RangeError("n > N/2: the order for p < q is proved only for n <= N/2");
    if (q.inv >= kHalf) {
      out.value = PowerProduct();
      out.branch = "theorem-C.1";
    } else {
      const PowerProduct one;
      const PowerProduct base = n == 0 ? one : min(one, pp_pow(n, -kHalf) * pp_pow(N, q.inv));
      const Rational omega = min(Rational(1), (p.inv - q.inv) / (kHalf - q.inv));
      out.value = base.pow(omega);
      out.branch = "theorem-C.2";
    }
  }
  out.terms.push_back({out.branch, out.value});
  return out;
}

WidthOrder intersection_order(const IntersectionSpec& spec) {
  check_ranges(spec);
  const Rational iq = spec.q.inverse();
  const bool small_q = spec.q <= Rational(2);
  WidthOrder out;
  const auto& balls = spec.balls;
  const PowerProduct gl = small_q ? PowerProduct() : pp_pow(spec.n, -kHalf) * pp_pow(spec.N, iq);

  for (std::size_t a = 0; a < balls.size(); ++a) {
    const auto& b = balls[a];
    const std::string label = "ball[" + idx(a) + "]";
    if (b.p.inv <= iq) {  // p >= q
      out.terms.push_back({label, b.nu * pp_pow(spec.N, iq - b.p.inv)});
    } else if (small_q) {
      out.terms.push_back({label, b.nu});
    } else if (b.p.inv <= kHalf) {  // 2 <= p < q
      out.terms.push_back({label, b.nu * gl.pow((b.p.inv - iq) / (kHalf - iq))});
    } else {
      out.terms.push_back({label, b.nu * gl});
    }
  }
  for (std::size_t a = 0; a < balls.size(); ++a) {
    for (std::size_t c = 0; c < balls.size(); ++c) {
      if (balls[a].p.inv < iq && balls[c].p.inv > iq) {
        const Rational lam = weight(balls[a].p, balls[c].p, iq);
        out.terms.push_back({"cross-lambda[" + idx(a) + "," + idx(c) + "]", interp(balls[a].nu, balls[c].nu, lam)});
      }
    }
  }
  if (!small_q) {
    for (std::size_t a = 0; a < balls.size(); ++a) {
      for (std::size_t c = 0; c < balls.size(); ++c) {
        if (balls[a].p.inv < kHalf && balls[c].p.inv > kHalf) {
          const Rational mu = weight(balls[a].p, balls[c].p, kHalf);
          out.terms.push_back({"cross-mu[" + idx(a) + "," + idx(c) + "]", interp(balls[a].nu, balls[c].nu, mu) * gl});
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < out.terms.size(); ++t) {
    if (out.terms[t].value < out.terms[best].value) best = t;
  }
  out.value = out.terms[best].value;
  out.branch = out.terms[best].label;
  return out;
}

PowerProduct vk_lower_bound(std::uint64_t k, std::uint64_t N, std::uint64_t n, const Rational& q) {
  if (k < 1 || k > N) throw RangeError("k must lie in [1, N]");
  if (2 * n > N) throw RangeError("n > N/2");
  return vk_expr(PowerProduct::from_integer(k), N, n, q);
}

namespace {

class Classifier {
 public:
  explicit Classifier(const IntersectionSpec& spec) : spec_(spec), iq_(spec.q.inverse()) {
    if (spec.q > Rational(2)) {
      gl_inv_ = inverse_gluskin_base(spec.n, spec.N, spec.q);
      gl_exp_ = Rational(1) / (kHalf - iq_);
    }
  }

  BranchClassification run() {
    BranchClassification out;
    const bool small_q = spec_.q <= Rational(2);
    out.lemma = small_q ? 1 : 2;
    const int cases = small_q ? 3 : 5;
    for (int c = 1; c <= cases; ++c) {
      auto cert = small_q ? lemma1(c) : lemma2(c);
      if (!cert) continue;
      out.matching_cases.push_back(c);
      if (out.lemma_case == 0) {
        out.lemma_case = c;
        out.certificate = std::move(cert);
      }
    }
    return out;
  }

 private:
  const IntersectionSpec& spec_;
  Rational iq_;
  PowerProduct gl_inv_;
  Rational gl_exp_;

  const PowerProduct& nu(std::size_t a) const { return spec_.balls[a].nu; }
  const Rational& ip(std::size_t a) const { return spec_.balls[a].p.inv; }
  std::size_t size() const { return spec_.balls.size(); }

  bool p_lt(std::size_t a, const Rational& inv_v) const { return ip(a) > inv_v; }
  bool p_gt(std::size_t a, const Rational& inv_v) const { return ip(a) < inv_v; }

  PowerProduct cross(std::size_t a, std::size_t b, const Rational& inv_target) const {
    return interp(nu(a), nu(b), interpolation_weight(ip(a), ip(b), inv_target));
  }

  bool smallest(std::size_t a) const {
    for (std::size_t b = 0; b < size(); ++b) {
      if (nu(a) > nu(b)) return false;
    }
    return true;
  }

  bool corner_dominates(std::size_t a) const {
    for (std::size_t b = 0; b < size(); ++b) {
      if (nu(a) * pp_pow(spec_.N, ip(b) - ip(a)) > nu(b)) return false;
    }
    return true;
  }

  // (nu_ab)-type minimality with respect to the interpolation target 1/target.
  bool pair_minimal(std::size_t a, std::size_t b, const Rational& inv_target) const {
    const PowerProduct t = cross(a, b, inv_target);
    for (std::size_t g = 0; g < size(); ++g) {
      if (p_lt(g, inv_target) && t > cross(a, g, inv_target)) return false;
      if (p_gt(g, inv_target) && t > cross(g, b, inv_target)) return false;
    }
    return true;
  }

  PowerProduct l_of(std::size_t a, std::size_t b) const {
    return (nu(a) / nu(b)).pow((ip(a) - ip(b)).inverse());
  }

  LowerBoundCertificate certify(CertificateKind kind, int lemma, int c, std::size_t a,
                                std::optional<std::size_t> b, std::uint64_t k, std::optional<PowerProduct> l,
                                const PowerProduct& amplitude, const Rational& scale_exp, Rational factor) const {
    LowerBoundCertificate cert;
    cert.kind = kind;
    cert.lemma = lemma;
    cert.lemma_case = c;
    cert.alpha_star = a;
    cert.beta_star = b;
    cert.k = k;
    cert.l = l;
    cert.factor = factor;
    const PowerProduct kk = PowerProduct::from_integer(k);
    cert.scale = amplitude * kk.pow(scale_exp);
    const PowerProduct fac = PowerProduct::from_rational(factor);
    for (std::size_t g = 0; g < size(); ++g) {
      CertificateInequality ineq;
      ineq.gamma = g;
      ineq.lhs = cert.scale * kk.pow(ip(g));
      ineq.rhs = fac * nu(g);
      ineq.holds = ineq.lhs <= ineq.rhs;
      cert.checked.push_back(ineq);
    }
    cert.lower_bound = cert.scale * vk_expr(kk, spec_.N, spec_.n, spec_.q) / fac;
    const PowerProduct real_k = l ? *l : kk;
    cert.symbolic_bound = amplitude * real_k.pow(scale_exp) * vk_expr(real_k, spec_.N, spec_.n, spec_.q);
    return cert;
  }

  std::optional<LowerBoundCertificate> lemma1(int c) const {
    for (std::size_t a = 0; a < size(); ++a) {
      if (c == 1 && p_lt(a, iq_) && smallest(a)) {
        return certify(CertificateKind::B1Inclusion, 1, 1, a, std::nullopt, 1, std::nullopt, nu(a), Rational(), Rational(1));
      }
      if (c == 2 && p_gt(a, iq_) && corner_dominates(a)) {
        return certify(CertificateKind::BinfInclusion, 1, 2, a, std::nullopt, spec_.N, std::nullopt,
                       nu(a) * pp_pow(spec_.N, -ip(a)), Rational(), Rational(1));
      }
      if (c != 3 || !p_gt(a, iq_)) continue;
      for (std::size_t b = 0; b < size(); ++b) {
        if (!p_lt(b, iq_) || !pair_minimal(a, b, iq_)) continue;
        if (nu(a) > nu(b) || nu(a) < nu(b) * pp_pow(spec_.N, ip(a) - ip(b))) continue;
        const PowerProduct l = l_of(a, b);
        return certify(CertificateKind::VkInclusion, 1, 3, a, b, l.ceil_integer(), l, cross(a, b, iq_), -iq_,
                       Rational(2));
      }
    }
    return std::nullopt;
  }

  std::optional<LowerBoundCertificate> lemma2(int c) const {
    const Rational two_inv = kHalf;
    for (std::size_t a = 0; a < size(); ++a) {
      switch (c) {
        case 1:
          if (p_lt(a, two_inv) && smallest(a)) {
            return certify(CertificateKind::B1Inclusion, 2, 1, a, std::nullopt, 1, std::nullopt, nu(a), Rational(),
                           Rational(1));
          }
          break;
        case 2:
          if (p_gt(a, iq_) && corner_dominates(a)) {
            return certify(CertificateKind::BinfInclusion, 2, 2, a, std::nullopt, spec_.N, std::nullopt,
                           nu(a) * pp_pow(spec_.N, -ip(a)), Rational(), Rational(1));
          }
          break;
        case 3: {
          if (!(p_gt(a, two_inv) && p_lt(a, iq_))) break;
          bool ok = true;
          for (std::size_t b = 0; b < size() && ok; ++b) {
            ok = nu(a) * gl_inv_.pow((ip(b) - ip(a)) * gl_exp_) <= nu(b);
          }
          if (!ok) break;
          const PowerProduct l = gl_inv_.pow(gl_exp_);
          return certify(CertificateKind::VkInclusion, 2, 3, a, std::nullopt, l.ceil_integer(), l, nu(a), -ip(a),
                         Rational(2));
        }
        case 4:
          if (!p_gt(a, iq_)) break;
          for (std::size_t b = 0; b < size(); ++b) {
            if (!p_lt(b, iq_) || !pair_minimal(a, b, iq_)) continue;
            if (nu(a) > nu(b) * gl_inv_.pow((ip(a) - ip(b)) * gl_exp_)) continue;
            if (nu(a) < nu(b) * pp_pow(spec_.N, ip(a) - ip(b))) continue;
            const PowerProduct l = l_of(a, b);
            return certify(CertificateKind::VkInclusion, 2, 4, a, b, l.ceil_integer(), l, cross(a, b, iq_), -iq_,
                           Rational(2));
          }
          break;
        case 5:
          if (!p_gt(a, two_inv)) break;
          for (std::size_t b = 0; b < size(); ++b) {
            if (!p_lt(b, two_inv) || !pair_minimal(a, b, two_inv)) continue;
            if (nu(a) > nu(b)) continue;
            if (nu(a) < nu(b) * gl_inv_.pow((ip(a) - ip(b)) * gl_exp_)) continue;
            const PowerProduct l = l_of(a, b);
            return certify(CertificateKind::VkInclusion, 2, 5, a, b, l.floor_integer(), l, cross(a, b, two_inv),
                           -kHalf, Rational(2));
          }
          break;
        default:
          break;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

BranchClassification classify_branch(const IntersectionSpec& spec) {
  check_ranges(spec);
  const bool small_q = spec.q <= Rational(2);
  const Rational iq = spec.q.inverse();
  for (const auto& b : spec.balls) {
    if (b.p.inv == iq) throw DomainError("classification requires p_alpha != q");
    if (!small_q && b.p.inv == kHalf) throw DomainError("classification requires p_alpha != 2 for q > 2");
  }
  return Classifier(spec).run();
}

std::uint64_t DyadicBlock::m() const {
  std::uint64_t s = 0;
  for (auto v : m_vec) s += v;
  return s;
}

IntersectionSpec dyadic_block_spec(const ProblemSpec& spec, const DyadicBlock& block, std::uint64_t n) {
  if (block.m_vec.size() != spec.d()) throw DomainError("block dimension does not match the spec");
  for (auto v : block.m_vec) {
    if (v < 1) throw DomainError("block entries must be positive integers");
  }
  const std::uint64_t m = block.m();
  if (m > 62) throw RangeError("block size 2^m exceeds 2^62");
  IntersectionSpec out;
  out.N = std::uint64_t{1} << m;
  out.n = n;
  out.q = spec.q;
  const Rational mr = to_rational(m);
  for (std::size_t j = 0; j < spec.d(); ++j) {
    const Rational e = -to_rational(block.m_vec[j]) * spec.r[j] - mr * spec.inv_q() + mr * spec.inv_p(j);
    out.balls.push_back(BallSpec{LebesgueExponent::finite(spec.p[j]), PowerProduct::power(Rational(2), e)});
  }
  return out;
}

WidthOrder dyadic_block_order(const ProblemSpec& spec, const DyadicBlock& block, std::uint64_t n) {
  return intersection_order(dyadic_block_spec(spec, block, n));
}

namespace {

Rational sum_of(const std::vector<Rational>& t) {
  Rational s;
  for (const auto& v : t) s += v;
  return s;
}

void take_max(std::optional<Rational>& best, const Rational& v) {
  if (!best || *best < v) best = v;
}

}  // namespace

Rational phi(const ProblemSpec& spec, const std::vector<Rational>& t) {
  if (t.size() != spec.d()) throw DomainError("phi: wrong number of coordinates");
  const Rational total = sum_of(t);
  const Rational iq = spec.inv_q();
  std::optional<Rational> best;
  for (std::size_t j = 0; j < spec.d(); ++j) {
    if (spec.p[j] >= spec.q) take_max(best, t[j] * spec.r[j]);
    if (spec.p[j] <= spec.q) take_max(best, t[j] * spec.r[j] + total * iq - total * spec.inv_p(j));
  }
  for (std::size_t i = 0; i < spec.d(); ++i) {
    for (std::size_t j = 0; j < spec.d(); ++j) {
      if (spec.p[i] > spec.q && spec.p[j] < spec.q) {
        const Rational lam = (iq - spec.inv_p(i)) / (spec.inv_p(j) - spec.inv_p(i));
        take_max(best, (Rational(1) - lam) * spec.r[i] * t[i] + lam * spec.r[j] * t[j]);
      }
    }
  }
  return *best;
}

Rational psi_n(const ProblemSpec& spec, const std::vector<Rational>& t, const Rational& t_total,
               const Rational& log2_n) {
  if (spec.q_le_2()) throw DomainError("psi_n is defined for q > 2");
  if (t.size() != spec.d()) throw DomainError("psi_n: wrong number of coordinates");
  const Rational iq = spec.inv_q();
  const Rational two(2);
  const auto ip = [&](std::size_t k) { return spec.inv_p(k); };
  const auto& p = spec.p;
  const auto& q = spec.q;
  std::optional<Rational> best;
  for (std::size_t j = 0; j < spec.d(); ++j) {
    if (p[j] >= q) take_max(best, spec.r[j] * t[j]);
    if (p[j] >= two && p[j] <= q) {
      const Rational c = (ip(j) - iq) / (kHalf - iq);
      take_max(best, spec.r[j] * t[j] - kHalf * c * t_total + kHalf * c * log2_n);
    }
    if (p[j] <= two) take_max(best, spec.r[j] * t[j] - t_total * ip(j) + kHalf * log2_n);
  }
  for (std::size_t i = 0; i < spec.d(); ++i) {
    for (std::size_t j = 0; j < spec.d(); ++j) {
      if (p[i] > q && ((p[j] > two && p[j] < q) || p[j] <= two)) {
        const Rational lam = (iq - ip(i)) / (ip(j) - ip(i));
        take_max(best, (Rational(1) - lam) * spec.r[i] * t[i] + lam * spec.r[j] * t[j]);
      }
      if ((p[i] >= q || (p[i] > two && p[i] < q)) && p[j] < two) {
        const Rational mu = (kHalf - ip(i)) / (ip(j) - ip(i));
        take_max(best, (Rational(1) - mu) * spec.r[i] * t[i] + mu * spec.r[j] * t[j] - t_total / two +
                           kHalf * log2_n);
      }
    }
  }
  return *best;
}

Rational cm_exponent(const ProblemSpec& spec, const std::vector<Rational>& m_vec) {
  if (spec.q_le_2()) return phi(spec, m_vec);
  const IndexPartition part = partition_indices(spec);
  const InterpCoeffs coeffs(spec, part);
  const Rational m = sum_of(m_vec);
  const Rational iq = spec.inv_q();
  std::optional<Rational> best;
  for (std::size_t j : part.I) take_max(best, spec.r[j] * m_vec[j]);
  for (std::size_t j = 0; j < spec.d(); ++j) {
    if (contains(part.J, j) || contains(part.K, j)) {
      take_max(best, spec.r[j] * m_vec[j] + m * iq - m * spec.inv_p(j));
    }
  }
  for (std::size_t i = 0; i < spec.d(); ++i) {
    for (std::size_t j = 0; j < spec.d(); ++j) {
      if (coeffs.lambda_defined(i, j)) {
        const Rational lam = coeffs.lambda(i, j);
        take_max(best, (Rational(1) - lam) * spec.r[i] * m_vec[i] + lam * spec.r[j] * m_vec[j]);
      }
      if (coeffs.mu_defined(i, j)) {
        const Rational mu = coeffs.mu(i, j);
        take_max(best, (Rational(1) - mu) * spec.r[i] * m_vec[i] + mu * spec.r[j] * m_vec[j] + m * iq - m * kHalf);
      }
    }
  }
  return *best;
}

std::vector<DominationCheck> check_domination(const ProblemSpec& spec, const std::vector<Rational>& m_vec) {
  if (spec.q_le_2()) throw DomainError("domination inequalities are stated for q > 2");
  if (m_vec.size() != spec.d()) throw DomainError("wrong number of block coordinates");
  const IndexPartition part = partition_indices(spec);
  const InterpCoeffs coeffs(spec, part);
  const Rational m = sum_of(m_vec);
  const Rational iq = spec.inv_q();
  auto block_term = [&](std::size_t k) { return spec.r[k] * m_vec[k] + m * iq - m * spec.inv_p(k); };
  std::vector<DominationCheck> out;
  for (std::size_t i = 0; i < spec.d(); ++i) {
    for (std::size_t j = 0; j < spec.d(); ++j) {
      if (!coeffs.mu_defined(i, j)) continue;
      const Rational mu = coeffs.mu(i, j);
      DominationCheck c;
      c.i = i;
      c.j = j;
      c.lhs = (Rational(1) - mu) * spec.r[i] * m_vec[i] + mu * spec.r[j] * m_vec[j] + m * iq - m * kHalf;
      if (spec.p[i] > spec.q) {
        const Rational lam = coeffs.lambda(i, j);
        c.rhs = max((Rational(1) - lam) * spec.r[i] * m_vec[i] + lam * spec.r[j] * m_vec[j], block_term(j));
      } else {
        c.rhs = max(block_term(i), block_term(j));
      }
      c.holds = c.lhs <= c.rhs;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace widthcalc
