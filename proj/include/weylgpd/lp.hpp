#ifndef WEYLGPD_LP_HPP
#define WEYLGPD_LP_HPP

// Exact feasibility of small linear systems over Q (phase-one simplex, Bland's rule).

#include <cstddef>
#include <optional>
#include <vector>

#include "weylgpd/exactlin.hpp"

namespace weylgpd::lp {

struct LinearSystem {
  std::size_t variables = 0;
  RationalMatrix eq_rows;
  std::vector<Rational> eq_rhs;
  RationalMatrix ge_rows;
  std::vector<Rational> ge_rhs;

  void add_eq(std::vector<Rational> row, Rational rhs) {
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
  }
  void add_ge(std::vector<Rational> row, Rational rhs) {
    ge_rows.push_back(std::move(row));
    ge_rhs.push_back(std::move(rhs));
  }
};

/// A point satisfying every row of the system (variables are free), or nullopt.
inline std::optional<std::vector<Rational>> find_feasible_point(const LinearSystem& sys) {
  const std::size_t n = sys.variables;
  const std::size_t m_eq = sys.eq_rows.size();
  const std::size_t m_ge = sys.ge_rows.size();
  const std::size_t m = m_eq + m_ge;
  if (m == 0) return std::vector<Rational>(n, Rational(0));

  // Columns: y+ (n), y- (n), surplus (m_ge), artificial (m), rhs.
  const std::size_t surplus0 = 2 * n;
  const std::size_t art0 = surplus0 + m_ge;
  const std::size_t cols = art0 + m;
  RationalMatrix t(m + 1, std::vector<Rational>(cols + 1, Rational(0)));
  std::vector<std::size_t> basic(m);

  for (std::size_t i = 0; i < m; ++i) {
    const bool is_eq = i < m_eq;
    const auto& row = is_eq ? sys.eq_rows[i] : sys.ge_rows[i - m_eq];
    Rational rhs = is_eq ? sys.eq_rhs[i] : sys.ge_rhs[i - m_eq];
    for (std::size_t j = 0; j < n; ++j) {
      t[i][j] = row[j];
      t[i][n + j] = -row[j];
    }
    if (!is_eq) t[i][surplus0 + (i - m_eq)] = -1;
    if (rhs < 0) {
      for (std::size_t j = 0; j < art0; ++j) t[i][j] = -t[i][j];
      rhs = -rhs;
    }
    t[i][art0 + i] = 1;
    t[i][cols] = rhs;
    basic[i] = art0 + i;
  }
  // Phase-one objective: minimize the sum of artificials, expressed in non-basic terms.
  auto& obj = t[m];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < art0; ++j) obj[j] -= t[i][j];
    obj[cols] -= t[i][cols];
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase one
    const Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
      }
    }
    basic[leave] = enter;
  }
  if (obj[cols] != 0) return std::nullopt;

  std::vector<Rational> y(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basic[i] < n) y[basic[i]] += t[i][cols];
    else if (basic[i] < 2 * n) y[basic[i] - n] -= t[i][cols];
  }
  return y;
}

/// Whether some x satisfies alpha(x) > 0 for every alpha in `positive` and
/// beta(x) = 0 for every beta in `zero`. Homogeneous, so strictness is scaled to >= 1.
inline std::optional<Vector> find_point_in_cone(std::span<const Covector> positive,
                                                std::span<const Covector> zero, std::size_t dim) {
  LinearSystem sys;
  sys.variables = dim;
  for (const auto& a : positive) sys.add_ge(a.coords(), Rational(1));
  for (const auto& b : zero) sys.add_eq(b.coords(), Rational(0));
  auto y = find_feasible_point(sys);
  if (!y) return std::nullopt;
  return Vector(std::move(*y));
}

/// Whether target is a nonnegative combination of generators.
inline bool in_conic_hull(const Covector& target, std::span<const Covector> generators) {
  const std::size_t dim = target.size();
  LinearSystem sys;
  sys.variables = generators.size();
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Rational> row(generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j) row[j] = generators[j][i];
    sys.add_eq(std::move(row), target[i]);
  }
  for (std::size_t j = 0; j < generators.size(); ++j) {
    std::vector<Rational> row(generators.size(), Rational(0));
    row[j] = 1;
    sys.add_ge(std::move(row), Rational(0));
  }
  return find_feasible_point(sys).has_value();
}

}  // namespace weylgpd::lp

#endif  // WEYLGPD_LP_HPP
