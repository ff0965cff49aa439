#pragma once
// Independent reference implementations. They use mpq_class directly and share no code
// with the library beyond the GMP types.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;

inline Q dot(const Vec& a, const Vec& b) {
  Q s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline Vec positive_scale(Vec v) {
  // Divide by the first nonzero absolute value so duplicate rays compare equal.
  for (const auto& q : v) {
    if (q == 0) continue;
    const Q s = abs(q);
    for (auto& x : v) x /= s;
    break;
  }
  return v;
}

/// Is {y : row . y > 0 for all rows} nonempty?  Fourier-Motzkin elimination.
inline bool strict_feasible(std::vector<Vec> rows) {
  if (rows.empty()) return true;
  const std::size_t n = rows.front().size();
  for (std::size_t k = 0; k < n; ++k) {
    std::set<Vec> next;
    std::vector<const Vec*> pos, neg;
    for (const auto& r : rows) {
      if (std::all_of(r.begin(), r.end(), [](const Q& q) { return q == 0; })) return false;
      if (r[k] > 0) pos.push_back(&r);
      else if (r[k] < 0) neg.push_back(&r);
      else next.insert(positive_scale(r));
    }
    for (const auto* p : pos) {
      for (const auto* m : neg) {
        Vec c(n);
        for (std::size_t t = 0; t < n; ++t) c[t] = -(*m)[k] * (*p)[t] + (*p)[k] * (*m)[t];
        next.insert(positive_scale(std::move(c)));
      }
    }
    rows.assign(next.begin(), next.end());
  }
  return rows.empty();
}

/// Walls of the chamber with sign vector `signs` w.r.t. the normals `h`.
inline std::vector<std::size_t> fm_walls(const std::vector<Vec>& h, const std::vector<int>& signs) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < h.size(); ++j) {
      Vec r = h[j];
      const int s = j == i ? -signs[j] : signs[j];
      if (s < 0)
        for (auto& q : r) q = -q;
      rows.push_back(std::move(r));
    }
    if (strict_feasible(rows)) out.push_back(i);
  }
  return out;
}

/// All realizable sign vectors of the central arrangement with normals h.
inline std::set<std::vector<int>> sign_vectors(const std::vector<Vec>& h) {
  std::vector<std::vector<int>> cur{{}};
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& s : cur) {
      for (int e : {1, -1}) {
        auto t = s;
        t.push_back(e);
        std::vector<Vec> rows;
        for (std::size_t j = 0; j <= i; ++j) {
          Vec r = h[j];
          if (t[j] < 0)
            for (auto& q : r) q = -q;
          rows.push_back(std::move(r));
        }
        if (strict_feasible(rows)) next.push_back(std::move(t));
      }
    }
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

/// Coordinates x with sum_k x_k basis[k] = target, by Gauss-Jordan on the transpose.
inline std::optional<Vec> solve(const std::vector<Vec>& basis, const Vec& target) {
  const std::size_t n = basis.size(), m = target.size();
  std::vector<Vec> a(m, Vec(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) a[i][k] = basis[k][i];
    a[i][n] = target[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    const Q lead = a[row][c];
    for (auto& q : a[row]) q /= lead;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Q f = a[i][c];
      for (std::size_t t = 0; t <= n; ++t) a[i][t] -= f * a[row][t];
    }
    piv.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (a[i][n] != 0) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = a[i][n];
  return x;
}

/// Closure of the simple roots under s_i(v) = v - (sum_j c_ij v_j) e_i, with |height| <= bound.
inline std::set<std::vector<long>> weyl_closure(const std::vector<std::vector<long>>& c, long bound) {
  const std::size_t n = c.size();
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> todo;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    todo.push_back(e);
  }
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    long h = 0;
    for (long x : v) h += x;
    if (std::abs(h) > bound || !seen.insert(v).second) continue;
    for (std::size_t i = 0; i < n; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += c[i][j] * v[j];
      auto w = v;
      w[i] -= s;
      todo.push_back(std::move(w));
    }
  }
  return seen;
}

}  // namespace oracle
