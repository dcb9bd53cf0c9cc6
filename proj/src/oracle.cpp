#include "widthcalc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "widthcalc/closedform.hpp"
#include "widthcalc/exponent.hpp"

namespace widthcalc {

namespace {

const Rational kOne(1);
const Rational kTwo(2);
const Rational kHalf(1, 2);

AffinePiece make_piece(std::size_t d, Family f, std::size_t i, std::size_t j) {
  AffinePiece piece;
  piece.coeffs.assign(d, Rational());
  piece.tag = PieceTag{f, i, j};
  return piece;
}

// weight w with 1/target = (1-w)/p_i + w/p_j
Rational mix(const Rational& pi, const Rational& pj, const Rational& target) {
  return (target.inverse() - pi.inverse()) / (pj.inverse() - pi.inverse());
}

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ",";
    out += v[k].str();
  }
  return out;
}

std::string point_str(const Point& x) { return "alpha=(" + join(x.alpha) + ") s=" + x.s.str(); }

std::size_t worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 4 : std::min<unsigned>(hw, 16);
}

}  // namespace

PiecewiseMax reference_objective(const ProblemSpec& spec) {
  const std::size_t d = spec.d();
  const auto& p = spec.p;
  const auto& r = spec.r;
  const Rational& q = spec.q;
  PiecewiseMax obj;
  obj.dim = d;

  if (q <= kTwo) {
    obj.has_s = false;
    for (std::size_t j = 0; j < d; ++j) {
      if (p[j] >= q) {
        auto piece = make_piece(d, Family::H1, j, j);
        piece.coeffs[j] = r[j];
        obj.pieces.push_back(piece);
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (p[j] <= q) {
        auto piece = make_piece(d, Family::H2, j, j);
        piece.coeffs[j] = r[j];
        piece.constant = q.inverse() - p[j].inverse();
        obj.pieces.push_back(piece);
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (p[i] > q && p[j] < q) {
          const Rational lam = mix(p[i], p[j], q);
          auto piece = make_piece(d, Family::H3, i, j);
          piece.coeffs[i] = (kOne - lam) * r[i];
          piece.coeffs[j] = lam * r[j];
          obj.pieces.push_back(piece);
        }
      }
    }
    return obj;
  }

  obj.has_s = true;
  const auto in_I = [&](std::size_t j) { return p[j] >= q; };
  const auto in_J = [&](std::size_t j) { return kTwo <= p[j] && p[j] <= q; };
  const auto in_K = [&](std::size_t j) { return p[j] <= kTwo; };
  const auto in_Ip = [&](std::size_t j) { return p[j] > q; };
  const auto in_Jp = [&](std::size_t j) { return kTwo < p[j] && p[j] < q; };
  const auto in_Kp = [&](std::size_t j) { return p[j] < kTwo; };

  for (std::size_t j = 0; j < d; ++j) {
    if (!in_I(j)) continue;
    auto piece = make_piece(d, Family::HT1, j, j);
    piece.coeffs[j] = r[j];
    obj.pieces.push_back(piece);
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!in_J(j)) continue;
    // r_j α_j − ½·c·(s − 1)
    const Rational c = (p[j].inverse() - q.inverse()) / (kHalf - q.inverse());
    auto piece = make_piece(d, Family::HT2, j, j);
    piece.coeffs[j] = r[j];
    piece.s_coeff = -c / kTwo;
    piece.constant = c / kTwo;
    obj.pieces.push_back(piece);
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!in_K(j)) continue;
    auto piece = make_piece(d, Family::HT3, j, j);
    piece.coeffs[j] = r[j];
    piece.s_coeff = -p[j].inverse();
    piece.constant = kHalf;
    obj.pieces.push_back(piece);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!in_Ip(i) || !(in_Jp(j) || in_K(j))) continue;
      const Rational lam = mix(p[i], p[j], q);
      auto piece = make_piece(d, Family::HT4, i, j);
      piece.coeffs[i] = (kOne - lam) * r[i];
      piece.coeffs[j] = lam * r[j];
      obj.pieces.push_back(piece);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!(in_I(i) || in_Jp(i)) || !in_Kp(j)) continue;
      const Rational mu = mix(p[i], p[j], kTwo);
      auto piece = make_piece(d, Family::HT5, i, j);
      piece.coeffs[i] = (kOne - mu) * r[i];
      piece.coeffs[j] = mu * r[j];
      piece.s_coeff = -kHalf;
      piece.constant = kHalf;
      obj.pieces.push_back(piece);
    }
  }
  return obj;
}

// ---- grid ----

namespace {

struct Levels {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

Levels levels(const FeasibleSet& feas, std::uint64_t G) {
  const Rational g(mpq_class(mpz_class(std::to_string(G))));
  const Rational a = feas.s_lower * g;
  const Rational b = feas.s_upper * g;
  mpz_class lo, hi;
  mpz_cdiv_q(lo.get_mpz_t(), a.numerator().get_mpz_t(), a.denominator().get_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), b.numerator().get_mpz_t(), b.denominator().get_mpz_t());
  return {lo.get_ui(), hi.get_ui()};
}

// C(m + k - 1, k - 1), saturating at cap.
std::uint64_t compositions(std::uint64_t m, std::size_t k, std::uint64_t cap) {
  unsigned __int128 c = 1;
  for (std::size_t t = 1; t < k; ++t) {
    c = c * (m + t) / t;
    if (c > cap) return cap;
  }
  return static_cast<std::uint64_t>(c);
}

using i128 = __int128;

// Pieces rescaled to integers: value·L·G = Σ c_j a_j + sc·m + k·G.
struct IntPiece {
  std::vector<std::int64_t> c;
  std::int64_t sc = 0;
  std::int64_t k = 0;
};

std::optional<std::vector<IntPiece>> integer_pieces(const PiecewiseMax& obj, mpz_class& L) {
  L = 1;
  for (const auto& piece : obj.pieces) {
    for (const auto& c : piece.coeffs) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.denominator().get_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), piece.s_coeff.denominator().get_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), piece.constant.denominator().get_mpz_t());
  }
  const mpz_class limit = mpz_class(1) << 40;
  auto scaled = [&](const Rational& v, std::int64_t& out) {
    const mpz_class z = v.numerator() * (L / v.denominator());
    if (abs(z) > limit) return false;
    out = z.get_si();
    return true;
  };
  std::vector<IntPiece> out;
  for (const auto& piece : obj.pieces) {
    IntPiece ip;
    ip.c.resize(piece.coeffs.size());
    for (std::size_t j = 0; j < piece.coeffs.size(); ++j) {
      if (!scaled(piece.coeffs[j], ip.c[j])) return std::nullopt;
    }
    if (!scaled(piece.s_coeff, ip.sc) || !scaled(piece.constant, ip.k)) return std::nullopt;
    out.push_back(std::move(ip));
  }
  return out;
}

struct Best {
  bool found = false;
  i128 value = 0;        // integer path
  Rational exact;        // rational path
  std::vector<std::uint64_t> a;
  std::uint64_t m = 0;
};

// Enumerates a[1..d-1] summing to rest, with a[0] fixed by the caller.
template <class Visit>
void enumerate_tail(std::vector<std::uint64_t>& a, std::size_t pos, std::uint64_t rest, Visit& visit) {
  if (pos + 1 == a.size()) {
    a[pos] = rest;
    visit();
    return;
  }
  for (std::uint64_t v = 0; v <= rest; ++v) {
    a[pos] = v;
    enumerate_tail(a, pos + 1, rest - v, visit);
  }
}

void offer_int(Best& best, const std::vector<i128>& values, const std::vector<std::uint64_t>& a, std::uint64_t m) {
  i128 worst = values[0];
  for (std::size_t k = 1; k < values.size(); ++k) worst = std::max(worst, values[k]);
  if (!best.found || worst < best.value) {
    best.found = true;
    best.value = worst;
    best.a = a;
    best.m = m;
  }
}

// Same enumeration order as enumerate_tail, carrying per-piece partial sums.
void scan_int(const std::vector<IntPiece>& ints, Best& best, std::vector<std::uint64_t>& a, std::size_t pos,
              std::uint64_t rest, const std::vector<i128>& partial, std::uint64_t m) {
  const std::size_t P = ints.size();
  if (pos + 1 == a.size()) {
    a[pos] = rest;
    i128 worst = 0;
    for (std::size_t k = 0; k < P; ++k) {
      const i128 v = partial[k] + static_cast<i128>(ints[k].c[pos]) * rest;
      if (k == 0 || v > worst) worst = v;
    }
    if (!best.found || worst < best.value) {
      best.found = true;
      best.value = worst;
      best.a = a;
      best.m = m;
    }
    return;
  }
  std::vector<i128> next(P);
  for (std::uint64_t x = 0; x <= rest; ++x) {
    a[pos] = x;
    if (pos + 2 == a.size()) {
      // innermost pair inlined
      i128 worst = 0;
      for (std::size_t k = 0; k < P; ++k) {
        const i128 v = partial[k] + static_cast<i128>(ints[k].c[pos]) * x +
                       static_cast<i128>(ints[k].c[pos + 1]) * (rest - x);
        if (k == 0 || v > worst) worst = v;
      }
      if (!best.found || worst < best.value) {
        a[pos + 1] = rest - x;
        best.found = true;
        best.value = worst;
        best.a = a;
        best.m = m;
      }
      continue;
    }
    for (std::size_t k = 0; k < P; ++k) next[k] = partial[k] + static_cast<i128>(ints[k].c[pos]) * x;
    scan_int(ints, best, a, pos + 1, rest - x, next, m);
  }
}

Best scan(const PiecewiseMax& obj, const std::optional<std::vector<IntPiece>>& ints, std::uint64_t G,
          const std::vector<std::pair<std::uint64_t, std::uint64_t>>& tasks) {
  const std::size_t d = obj.dim;
  Best best;
  std::vector<std::uint64_t> a(d);
  std::uint64_t m = 0;
  const Rational g(mpq_class(mpz_class(std::to_string(G))));

  auto visit_exact = [&]() {
    Point x;
    x.alpha.resize(d);
    for (std::size_t j = 0; j < d; ++j) x.alpha[j] = Rational(static_cast<std::int64_t>(a[j])) / g;
    x.s = Rational(static_cast<std::int64_t>(m)) / g;
    const Rational v = obj.eval(x);
    if (!best.found || v < best.exact) {
      best.found = true;
      best.exact = v;
      best.a = a;
      best.m = m;
    }
  };

  std::vector<i128> partial(ints ? ints->size() : 0);
  for (const auto& [level, a0] : tasks) {
    m = level;
    a[0] = a0;
    if (d == 1) {
      if (a0 != m) continue;
      if (ints) {
        for (std::size_t k = 0; k < ints->size(); ++k) {
          const auto& piece = (*ints)[k];
          partial[k] = static_cast<i128>(piece.sc) * m + static_cast<i128>(piece.k) * G + static_cast<i128>(piece.c[0]) * a0;
        }
        offer_int(best, partial, a, m);
      } else {
        visit_exact();
      }
      continue;
    }
    if (ints) {
      for (std::size_t k = 0; k < ints->size(); ++k) {
        const auto& piece = (*ints)[k];
        partial[k] = static_cast<i128>(piece.sc) * m + static_cast<i128>(piece.k) * G + static_cast<i128>(piece.c[0]) * a0;
      }
      scan_int(*ints, best, a, 1, m - a0, partial, m);
    } else {
      enumerate_tail(a, 1, m - a0, visit_exact);
    }
  }
  return best;
}

}  // namespace

std::uint64_t grid_point_count(std::size_t dim, const FeasibleSet& feas, std::uint64_t G) {
  const Levels lv = levels(feas, G);
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 2;
  std::uint64_t total = 0;
  for (std::uint64_t m = lv.lo; m <= lv.hi; ++m) {
    total += compositions(m, dim, cap);
    if (total > cap) return cap;
  }
  return total;
}

std::uint64_t default_grid(std::size_t d) { return 64 * static_cast<std::uint64_t>(d); }

GridReport grid_minimize(const PiecewiseMax& obj, const FeasibleSet& feas, std::uint64_t G) {
  if (G < 2) throw DomainError("grid resolution must be at least 2");
  if (obj.pieces.empty()) throw DomainError("objective has no pieces");
  const std::size_t d = obj.dim;
  const std::uint64_t count = grid_point_count(d, feas, G);
  if (count > kGridPointGuard) {
    throw RangeError("grid of " + std::to_string(count) + " points exceeds the 2^20 guard");
  }
  const Levels lv = levels(feas, G);
  if (lv.lo > lv.hi) throw DomainError("feasible set contains no grid level");

  std::vector<std::pair<std::uint64_t, std::uint64_t>> tasks;
  for (std::uint64_t m = lv.lo; m <= lv.hi; ++m) {
    for (std::uint64_t a0 = 0; a0 <= m; ++a0) tasks.emplace_back(m, a0);
  }
  mpz_class L;
  const auto ints = integer_pieces(obj, L);

  // Contiguous chunks, merged in order, so the reported point does not depend on the split.
  const std::size_t chunks = count > 20000 ? std::min(worker_count(), tasks.size()) : 1;
  std::vector<std::future<Best>> futures;
  const std::size_t per = (tasks.size() + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t from = c * per;
    const std::size_t to = std::min(tasks.size(), from + per);
    if (from >= to) break;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> part(tasks.begin() + static_cast<std::ptrdiff_t>(from),
                                                               tasks.begin() + static_cast<std::ptrdiff_t>(to));
    futures.push_back(std::async(std::launch::async, [&obj, &ints, G, part = std::move(part)] {
      return scan(obj, ints, G, part);
    }));
  }
  Best best;
  for (auto& f : futures) {
    Best b = f.get();
    if (!b.found) continue;
    const bool better = !best.found || (ints ? b.value < best.value : b.exact < best.exact);
    if (better) best = std::move(b);
  }

  const Rational g(mpq_class(mpz_class(std::to_string(G))));
  GridReport rep;
  rep.G = G;
  rep.grid_step = kOne / g;
  rep.points = count;
  rep.best_point.alpha.resize(d);
  for (std::size_t j = 0; j < d; ++j) rep.best_point.alpha[j] = Rational(static_cast<std::int64_t>(best.a[j])) / g;
  rep.best_point.s = Rational(static_cast<std::int64_t>(best.m)) / g;
  if (ints) {
    // i128 -> decimal string -> mpz
    i128 v = best.value;
    const bool neg = v < 0;
    std::string digits;
    do {
      const int digit = static_cast<int>(neg ? -(v % 10) : v % 10);
      digits.push_back(static_cast<char>('0' + digit));
      v /= 10;
    } while (v != 0);
    if (neg) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    rep.best_value = Rational(mpq_class(mpz_class(digits), L * mpz_class(std::to_string(G))));
    if (rep.best_value != obj.eval(rep.best_point)) throw std::logic_error("grid integer evaluation disagrees");
  } else {
    rep.best_value = best.exact;
  }

  Rational lip;
  Rational s_max;
  for (std::size_t j = 0; j < d; ++j) {
    Rational cmax;
    for (const auto& piece : obj.pieces) cmax = max(cmax, piece.coeffs[j].abs());
    lip += cmax;
  }
  for (const auto& piece : obj.pieces) s_max = max(s_max, piece.s_coeff.abs());
  rep.gap_bound = (lip + s_max) / g;
  return rep;
}

GridCheck grid_check(const ProblemSpec& spec, const Rational& theta, std::uint64_t G) {
  const PiecewiseMax obj = reference_objective(spec);
  const FeasibleSet feas = FeasibleSet::for_spec(spec);
  GridCheck out;
  out.report = grid_minimize(obj, feas, G);
  out.bracketed = out.report.brackets(theta);
  while (!out.bracketed && grid_point_count(spec.d(), feas, G * 4) <= kGridPointGuard) {
    G *= 4;
    ++out.refinements;
    out.report = grid_minimize(obj, feas, G);
    out.bracketed = out.report.brackets(theta);
  }
  return out;
}

// ---- identities ----

namespace {

// Nonnegative rationals summing to total, with some coordinates set to zero.
std::vector<Rational> random_split(Lcg64& rng, std::size_t d, const Rational& total) {
  std::vector<Rational> w(d);
  Rational sum;
  while (sum.is_zero()) {
    sum = Rational();
    for (auto& v : w) {
      v = rng.below(4) == 0 ? Rational() : rng.rational_in(Rational(), kOne);
      sum += v;
    }
  }
  for (auto& v : w) v = v / sum * total;
  return w;
}

}  // namespace

ScalingReport check_scaling_identities(const ProblemSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  Lcg64 rng(seed);
  ScalingReport rep;
  const std::size_t d = spec.d();
  const PiecewiseMax h = build_formal_h(spec);
  const PiecewiseMax lib = build_objective(spec);
  const PiecewiseMax ref = reference_objective(spec);
  const bool big_q = !spec.q_le_2();
  const Rational half_q = spec.q / kTwo;
  auto fail = [&](std::string identity, std::string witness) {
    rep.violations.push_back({std::move(identity), spec.describe(), std::move(witness)});
  };

  for (std::uint64_t k = 0; k < samples; ++k) {
    ++rep.points_checked;
    // φ(t) = Σt · h(t / Σt)
    {
      const Rational total = rng.rational_in(Rational(), Rational(64));
      const auto t = random_split(rng, d, total);
      Point x;
      x.alpha.resize(d);
      for (std::size_t j = 0; j < d; ++j) x.alpha[j] = t[j] / total;
      if (phi(spec, t) != total * h.eval(x)) fail("phi-scaling", "t=(" + join(t) + ")");
    }
    // library objective agrees with the reference transcription on the feasible set
    {
      Point x;
      x.s = big_q ? (rng.coin() ? rng.rational_in(kOne, half_q) : (rng.coin() ? kOne : half_q)) : kOne;
      x.alpha = random_split(rng, d, x.s);
      if (lib.eval(x) != ref.eval(x)) fail("objective-transcription", point_str(x));
    }
    if (!big_q) continue;
    // h̃(α, q/2) = (q/2)·h(2α/q)
    {
      Point x;
      x.s = half_q;
      x.alpha = random_split(rng, d, half_q);
      Point y;
      y.alpha.resize(d);
      for (std::size_t j = 0; j < d; ++j) y.alpha[j] = x.alpha[j] / half_q;
      if (lib.eval(x) != half_q * h.eval(y)) fail("face-scaling", point_str(x));
    }
    // ψₙ(t̄, t) = h̃(t̄/L, t/L)·L with L = log₂ n
    {
      const Rational L(rng.between(1, 60));
      Point x;
      x.s = rng.coin() ? rng.rational_in(kOne, half_q) : kOne;
      x.alpha = random_split(rng, d, x.s);
      std::vector<Rational> t(d);
      for (std::size_t j = 0; j < d; ++j) t[j] = x.alpha[j] * L;
      if (psi_n(spec, t, x.s * L, L) != lib.eval(x) * L) {
        fail("psi-scaling", point_str(x) + " log2n=" + L.str());
      }
    }
  }
  return rep;
}

// ---- stratified sampling ----

const std::vector<std::string>& strata() {
  static const std::vector<std::string> names{"T1.1", "T1.2a", "T1.2b", "T1.3a", "T1.3b",
                                              "T1.3c", "T4.1", "T4.2a", "T4.2b"};
  return names;
}

namespace {

Rational draw_q_small(Lcg64& rng) { return rng.coin() ? kTwo : rng.rational_in(Rational(5, 4), kTwo); }
Rational draw_q_big(Lcg64& rng) { return rng.rational_in(Rational(9, 4), Rational(6)); }
Rational draw_r(Lcg64& rng) { return rng.rational_in(Rational(1, 8), Rational(4)); }

// p in [lo, hi) with the endpoint lo drawn now and then.
Rational draw_p(Lcg64& rng, const Rational& lo, const Rational& hi, bool allow_lo) {
  if (allow_lo && rng.below(5) == 0) return lo;
  return rng.rational_in(lo, hi);
}

}  // namespace

ProblemSpec sample_stratum_spec(const std::string& stratum, Lcg64& rng, std::size_t max_d) {
  const std::size_t d_small = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(std::max<std::size_t>(2, max_d))));
  std::vector<Rational> p, r;

  if (stratum == "T1.1") {
    const bool small = rng.coin();
    const Rational q = small ? draw_q_small(rng) : draw_q_big(rng);
    const std::size_t d = small ? d_small : 2;
    for (std::size_t j = 0; j < d; ++j) {
      p.push_back(draw_p(rng, q, q + Rational(8), true));
      r.push_back(draw_r(rng));
    }
    return ProblemSpec(p, r, q);
  }
  if (stratum == "T1.2a" || stratum == "T1.2b") {
    const Rational q = draw_q_small(rng);
    const std::size_t d = d_small;
    const bool mixed = stratum == "T1.2b";
    const std::size_t forced_low = rng.below(d);
    std::size_t forced_high = rng.below(d);
    if (forced_high == forced_low) forced_high = (forced_low + 1) % d;
    for (std::size_t j = 0; j < d; ++j) {
      const bool low = !mixed || j == forced_low || (j != forced_high && rng.coin());
      p.push_back(low ? rng.rational_in(kOne, q) : rng.rational_in(q, q + Rational(6)));
      r.push_back(draw_r(rng));
    }
    if (!mixed && rng.below(4) == 0) p[rng.below(d)] = q;
    return ProblemSpec(p, r, q);
  }
  if (stratum == "T1.3a" || stratum == "T1.3b" || stratum == "T1.3c") {
    const Rational q = draw_q_big(rng);
    for (std::size_t j = 0; j < 2; ++j) {
      Rational pj;
      if (stratum == "T1.3a") {
        pj = j == 0 && rng.below(4) == 0 ? kTwo : rng.rational_in(kOne, kTwo);
      } else if (stratum == "T1.3b") {
        // one index below q so that case 1 does not apply
        pj = j == 0 ? draw_p(rng, kTwo, q, true) : draw_p(rng, kTwo, q + Rational(6), true);
      } else {
        pj = j == 0 ? rng.rational_in(kOne, kTwo) : rng.rational_in(kTwo, q + Rational(6));
      }
      p.push_back(pj);
      r.push_back(draw_r(rng));
    }
    return ProblemSpec(p, r, q);
  }
  if (stratum == "T4.1" || stratum == "T4.2a" || stratum == "T4.2b") {
    Rational q, p1, p2;
    if (stratum == "T4.1") {
      q = draw_q_small(rng);
      p2 = rng.rational_in(kOne, q);
    } else {
      q = draw_q_big(rng);
      p2 = stratum == "T4.2a" ? draw_p(rng, kTwo, q, true) : rng.rational_in(kOne, kTwo);
    }
    p1 = rng.rational_in(q, q + Rational(12));
    const Rational gap = p2.inverse() - p1.inverse();
    const Rational r2 = rng.below(6) == 0 ? gap : rng.rational_in(Rational(), gap);
    const Rational r1 = draw_r(rng);
    if (rng.coin()) return ProblemSpec({p1, p2}, {r1, r2}, q);
    return ProblemSpec({p2, p1}, {r2, r1}, q);
  }
  throw DomainError("unknown stratum " + stratum);
}

namespace {

struct Evaluated {
  Rational lp_theta;
  bool unique = false;
  bool grid_done = false;
  bool grid_ok = true;
  std::string grid_note;
};

Evaluated evaluate(const ProblemSpec& spec, const CrossValidationOptions& options) {
  PiecewiseMax obj = build_objective(spec);
  if (options.inject_fault) {
    for (auto& piece : obj.pieces) piece.coeffs[0] = -piece.coeffs[0];
  }
  const ExponentResult res = minimize(obj, FeasibleSet::for_spec(spec));
  Evaluated ev;
  ev.lp_theta = res.theta;
  ev.unique = res.unique;
  if (options.grid) {
    const std::uint64_t G = options.grid_per_dim * spec.d();
    try {
      const GridCheck gc = grid_check(spec, res.theta, G);
      ev.grid_done = true;
      ev.grid_ok = gc.bracketed;
      if (!gc.bracketed) {
        ev.grid_note = spec.describe() + " theta=" + res.theta.str() + " grid=[" +
                       (gc.report.best_value - gc.report.gap_bound).str() + "," + gc.report.best_value.str() +
                       "] G=" + std::to_string(gc.report.G);
      }
    } catch (const RangeError&) {
      ev.grid_done = false;  // over the point guard
    }
  }
  return ev;
}

}  // namespace

bool CrossValidationReport::ok() const {
  return std::all_of(strata.begin(), strata.end(), [](const StratumReport& s) {
    return s.mismatches.empty() && s.grid_failures.empty() && !s.exhausted;
  });
}

CrossValidationReport cross_validate(std::uint64_t sample_count, std::uint64_t seed,
                                     const CrossValidationOptions& options) {
  CrossValidationReport rep;
  rep.seed = seed;
  rep.samples = sample_count;
  const auto& names = strata();
  for (std::size_t k = 0; k < names.size(); ++k) {
    StratumReport sr;
    sr.name = names[k];
    sr.requested = sample_count;
    // one independent stream per stratum
    Lcg64 rng(seed * 0x9E3779B97F4A7C15ULL + k + 1);
    std::vector<std::pair<ProblemSpec, Rational>> accepted;
    const std::uint64_t draw_limit = 2000 * sample_count + 100;
    while (accepted.size() < sample_count) {
      if (sr.draws >= draw_limit) {
        sr.exhausted = true;
        break;
      }
      ++sr.draws;
      const ProblemSpec spec = sample_stratum_spec(sr.name, rng, options.max_d);
      const RegimeReport cf = classify_regime(spec);
      if (cf.tie) {
        // excluded by the theorem's hypotheses; recorded, never asserted
        if (cf.note.rfind(sr.name + " ", 0) == 0) sr.ties.push_back(spec.describe());
        continue;
      }
      if (cf.theorem_case != sr.name || !cf.exponent) continue;
      accepted.emplace_back(spec, *cf.exponent);
    }

    std::vector<Evaluated> results(accepted.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(worker_count(), accepted.size()));
    std::vector<std::future<void>> futures;
    for (std::size_t w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < accepted.size(); i += workers) results[i] = evaluate(accepted[i].first, options);
      }));
    }
    for (auto& f : futures) f.get();

    for (std::size_t i = 0; i < accepted.size(); ++i) {
      const auto& [spec, closed] = accepted[i];
      const auto& ev = results[i];
      if (!ev.unique) ++sr.nonunique;
      if (ev.lp_theta == closed) ++sr.matched;
      else sr.mismatches.push_back({spec.describe(), closed.str(), ev.lp_theta.str()});
      if (ev.grid_done) ++sr.grid_checked;
      if (!ev.grid_ok) sr.grid_failures.push_back(ev.grid_note);
    }
    rep.strata.push_back(std::move(sr));
  }
  return rep;
}

// ---- certificates ----

IntersectionSpec sample_intersection_spec(Lcg64& rng) {
  static const std::vector<Rational> q_menu{Rational(3, 2), Rational(2), Rational(5, 4), Rational(3), Rational(4),
                                            Rational(6)};
  static const std::vector<std::string> p_menu{"1", "5/4", "3/2", "2", "3", "4", "8", "inf"};
  for (;;) {
    IntersectionSpec spec;
    spec.N = rng.coin() ? (std::uint64_t{1} << rng.between(2, 14)) : static_cast<std::uint64_t>(rng.between(4, 5000));
    spec.q = rng.coin() ? q_menu[rng.below(q_menu.size())] : rng.rational_in(kOne, Rational(8));
    std::uint64_t lo = 1;
    if (spec.q > kTwo) {
      lo = PowerProduct::power(Rational(static_cast<std::int64_t>(spec.N)), kTwo / spec.q).ceil_integer();
    }
    const std::uint64_t hi = spec.N / 2;
    if (lo < 1) lo = 1;
    if (lo > hi) continue;
    spec.n = lo + rng.below(hi - lo + 1);
    const std::size_t count = 1 + rng.below(3);
    const Rational N(static_cast<std::int64_t>(spec.N));
    while (spec.balls.size() < count) {
      LebesgueExponent p = rng.coin() ? LebesgueExponent::parse(p_menu[rng.below(p_menu.size())])
                                      : LebesgueExponent::finite(rng.rational_in(kOne, Rational(10)));
      if (p.inv == spec.q.inverse() || (spec.q > kTwo && p.inv == kHalf)) continue;
      const Rational e = rng.rational_in(Rational(-1), kOne);
      PowerProduct nu = PowerProduct::power(N, e);
      if (rng.below(4) == 0) nu = nu * PowerProduct::from_integer(1 + rng.below(5));
      spec.balls.push_back({p, nu});
    }
    return spec;
  }
}

CertificateSweepReport certificate_sweep(std::uint64_t count, std::uint64_t seed) {
  CertificateSweepReport rep;
  Lcg64 rng(seed ^ 0xC2B2AE3D27D4EB4FULL);
  const std::uint64_t draw_limit = 200 * count + 1000;
  while (rep.classified < count && rep.draws < draw_limit) {
    ++rep.draws;
    const IntersectionSpec spec = sample_intersection_spec(rng);
    const BranchClassification bc = classify_branch(spec);
    if (bc.lemma_case == 0 || !bc.certificate) {
      ++rep.unclassified;
      continue;
    }
    ++rep.classified;
    const auto& cert = *bc.certificate;
    const WidthOrder order = intersection_order(spec);
    std::string where = "N=" + std::to_string(spec.N) + " n=" + std::to_string(spec.n) + " q=" + spec.q.str();
    for (const auto& b : spec.balls) where += " (" + b.p.str() + "," + b.nu.str() + ")";
    where += " " + bc.label();
    if (!cert.verified()) rep.failures.push_back(where + ": certificate inequality fails");
    if (cert.symbolic_bound != order.value) {
      rep.failures.push_back(where + ": certified " + cert.symbolic_bound.str() + " vs order " + order.value.str());
    }
  }
  if (rep.classified < count) rep.failures.push_back("sampling exhausted before enough specs were classified");
  return rep;
}

long double brute_force_intersection(std::uint64_t N, std::uint64_t n, long double q,
                                     const std::vector<std::pair<long double, long double>>& p_nu) {
  const long double Nf = static_cast<long double>(N);
  const long double iq = 1.0L / q;
  const auto inv = [](long double p) { return std::isinf(p) ? 0.0L : 1.0L / p; };
  const long double gl = q <= 2 ? 1.0L : std::pow(static_cast<long double>(n), -0.5L) * std::pow(Nf, iq);
  long double best = std::numeric_limits<long double>::infinity();
  for (const auto& [p, nu] : p_nu) {
    const long double ip = inv(p);
    long double v;
    if (ip <= iq) v = nu * std::pow(Nf, iq - ip);
    else if (q <= 2) v = nu;
    else if (ip <= 0.5L) v = nu * std::pow(gl, (ip - iq) / (0.5L - iq));
    else v = nu * gl;
    best = std::min(best, v);
  }
  for (const auto& [pa, na] : p_nu) {
    for (const auto& [pc, nc] : p_nu) {
      const long double ia = inv(pa), ic = inv(pc);
      if (ia < iq && ic > iq) {
        const long double lam = (iq - ia) / (ic - ia);
        best = std::min(best, std::pow(na, 1 - lam) * std::pow(nc, lam));
      }
      if (q > 2 && ia < 0.5L && ic > 0.5L) {
        const long double mu = (0.5L - ia) / (ic - ia);
        best = std::min(best, std::pow(na, 1 - mu) * std::pow(nc, mu) * gl);
      }
    }
  }
  return best;
}

// ---- full run ----

bool VerifyReport::ok() const {
  if (!cross.ok() || !certificates.ok()) return false;
  return std::all_of(scaling.begin(), scaling.end(), [](const ScalingReport& s) { return s.violations.empty(); });
}

VerifyReport run_verification(std::uint64_t samples, std::uint64_t seed, const CrossValidationOptions& options) {
  VerifyReport rep;
  rep.cross = cross_validate(samples, seed, options);
  if (samples > 0) {
    Lcg64 rng(seed + 0x5851F42D4C957F2DULL);
    for (const auto& name : strata()) {
      for (int k = 0; k < 2; ++k) {
        const ProblemSpec spec = sample_stratum_spec(name, rng, options.max_d);
        rep.scaling.push_back(check_scaling_identities(spec, samples, rng.next()));
        ++rep.scaling_specs;
      }
    }
  }
  rep.certificates = certificate_sweep(samples, seed);
  return rep;
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  out << "verify seed=" << cross.seed << " samples=" << cross.samples << "\n";
  for (const auto& s : cross.strata) {
    out << "stratum " << s.name << ": requested=" << s.requested << " matched=" << s.matched
        << " mismatches=" << s.mismatches.size() << " draws=" << s.draws << " ties=" << s.ties.size()
        << " nonunique=" << s.nonunique << " grid_checked=" << s.grid_checked
        << " grid_failures=" << s.grid_failures.size() << (s.exhausted ? " EXHAUSTED" : "") << "\n";
    for (const auto& m : s.mismatches) {
      out << "  mismatch " << m.spec << " closed_form=" << m.closed_form << " lp=" << m.lp << "\n";
    }
    for (const auto& g : s.grid_failures) out << "  grid " << g << "\n";
  }
  std::uint64_t points = 0, violations = 0;
  for (const auto& s : scaling) {
    points += s.points_checked;
    violations += s.violations.size();
  }
  out << "scaling: specs=" << scaling_specs << " points=" << points << " violations=" << violations << "\n";
  for (const auto& s : scaling) {
    for (const auto& v : s.violations) out << "  " << v.identity << " " << v.spec << " at " << v.witness << "\n";
  }
  out << "certificates: classified=" << certificates.classified << " draws=" << certificates.draws
      << " unclassified=" << certificates.unclassified << " failures=" << certificates.failures.size() << "\n";
  for (const auto& f : certificates.failures) out << "  " << f << "\n";
  out << "result: " << (ok() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string VerifyReport::json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["seed"] = cross.seed;
  j["samples"] = cross.samples;
  ordered_json st = ordered_json::array();
  for (const auto& s : cross.strata) {
    ordered_json e;
    e["name"] = s.name;
    e["requested"] = s.requested;
    e["matched"] = s.matched;
    e["draws"] = s.draws;
    e["ties"] = s.ties;
    e["nonunique"] = s.nonunique;
    e["grid_checked"] = s.grid_checked;
    e["exhausted"] = s.exhausted;
    ordered_json mm = ordered_json::array();
    for (const auto& m : s.mismatches) mm.push_back({{"spec", m.spec}, {"closed_form", m.closed_form}, {"lp", m.lp}});
    e["mismatches"] = mm;
    e["grid_failures"] = s.grid_failures;
    st.push_back(e);
  }
  j["strata"] = st;
  ordered_json sc;
  std::uint64_t points = 0;
  ordered_json viol = ordered_json::array();
  for (const auto& s : scaling) {
    points += s.points_checked;
    for (const auto& v : s.violations) viol.push_back({{"identity", v.identity}, {"spec", v.spec}, {"witness", v.witness}});
  }
  sc["specs"] = scaling_specs;
  sc["points"] = points;
  sc["violations"] = viol;
  j["scaling"] = sc;
  j["certificates"] = {{"classified", certificates.classified},
                       {"draws", certificates.draws},
                       {"unclassified", certificates.unclassified},
                       {"failures", certificates.failures}};
  j["ok"] = ok();
  return j.dump(2) + "\n";
}

}  // namespace widthcalc
