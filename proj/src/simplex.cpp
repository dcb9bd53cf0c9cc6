#include "simplex.hpp"

#include <stdexcept>

#include <gmpxx.h>

namespace widthcalc::detail {

namespace {

class Tableau {
 public:
  std::vector<std::vector<mpq_class>> a;  // rows x (cols + 1), last column is rhs
  std::vector<mpq_class> cost;            // reduced costs, last entry is -value
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t row, std::size_t col) {
    const mpq_class p = a[row][col];
    for (auto& v : a[row]) v /= p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      const mpq_class f = a[r][col];
      for (std::size_t c = 0; c <= cols; ++c) {
        if (sgn(a[row][c]) != 0) a[r][c] -= f * a[row][c];
      }
    }
    if (sgn(cost[col]) != 0) {
      const mpq_class f = cost[col];
      for (std::size_t c = 0; c <= cols; ++c) {
        if (sgn(a[row][c]) != 0) cost[c] -= f * a[row][c];
      }
    }
    basis[row] = col;
  }

  void price_out() {
    for (std::size_t r = 0; r < a.size(); ++r) {
      const mpq_class f = cost[basis[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c <= cols; ++c) cost[c] -= f * a[r][c];
    }
  }

  // Returns false when unbounded. Columns at or beyond `allowed` never enter.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (sgn(cost[c]) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = a.size();
      mpq_class best;
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (sgn(a[r][enter]) <= 0) continue;
        mpq_class ratio = a[r][cols] / a[r][enter];
        if (leave == a.size() || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == a.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();

  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  std::vector<Sense> senses(m);
  std::vector<bool> flip(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    Sense s = lp.rows[r].sense;
    if (lp.rows[r].rhs.sign() < 0) {
      flip[r] = true;
      if (s == Sense::LE) s = Sense::GE;
      else if (s == Sense::GE) s = Sense::LE;
    }
    senses[r] = s;
    if (s != Sense::EQ) ++num_slack;
    if (s != Sense::LE) ++num_art;
  }

  Tableau t;
  t.cols = n + num_slack + num_art;
  t.a.assign(m, std::vector<mpq_class>(t.cols + 1));
  t.basis.assign(m, 0);
  std::size_t slack = n;
  std::size_t art = n + num_slack;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    const int sign = flip[r] ? -1 : 1;
    for (std::size_t c = 0; c < n && c < row.coeffs.size(); ++c) {
      t.a[r][c] = row.coeffs[c].raw() * sign;
    }
    t.a[r][t.cols] = row.rhs.raw() * sign;
    if (senses[r] == Sense::LE) {
      t.a[r][slack] = 1;
      t.basis[r] = slack++;
    } else {
      if (senses[r] == Sense::GE) t.a[r][slack++] = -1;
      t.a[r][art] = 1;
      t.basis[r] = art++;
    }
  }

  LpSolution out;
  const std::size_t first_art = n + num_slack;
  if (num_art > 0) {
    t.cost.assign(t.cols + 1, 0);
    for (std::size_t c = first_art; c < t.cols; ++c) t.cost[c] = 1;
    t.price_out();
    t.run(t.cols);
    if (sgn(t.cost[t.cols]) != 0) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive remaining zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.a.size();) {
      if (t.basis[r] < first_art) {
        ++r;
        continue;
      }
      std::size_t col = first_art;
      for (std::size_t c = 0; c < first_art; ++c) {
        if (sgn(t.a[r][c]) != 0) {
          col = c;
          break;
        }
      }
      if (col == first_art) {
        t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(r));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
      } else {
        t.pivot(r, col);
        ++r;
      }
    }
  }

  t.cost.assign(t.cols + 1, 0);
  for (std::size_t c = 0; c < n; ++c) t.cost[c] = lp.objective[c].raw();
  t.price_out();
  if (!t.run(first_art)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.x.assign(n, Rational());
  for (std::size_t r = 0; r < t.a.size(); ++r) {
    if (t.basis[r] < n) out.x[t.basis[r]] = Rational(t.a[r][t.cols]);
  }
  Rational value;
  for (std::size_t c = 0; c < n; ++c) value += lp.objective[c] * out.x[c];
  out.value = value;
  return out;
}

}  // namespace widthcalc::detail
