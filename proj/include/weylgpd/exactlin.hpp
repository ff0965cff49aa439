#ifndef WEYLGPD_EXACTLIN_HPP
#define WEYLGPD_EXACTLIN_HPP

// Exact rational linear algebra over Q^r.
//
// Covectors (elements of V*) and vectors (elements of V) are kept as distinct
// types so that evaluation alpha(x) is the only way the two meet.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "weylgpd/error.hpp"

namespace weylgpd {

using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class(num, den) does not reduce; every other operation assumes reduced input.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) {
  // mpq_class::get_str already prints "p" when the denominator is one.
  return q.get_str();
}

inline Rational parse_rational(const std::string& text) {
  std::string trimmed;
  for (char c : text) {
    if (c != ' ') trimmed.push_back(c);
  }
  if (!trimmed.empty() && trimmed.front() == '+') trimmed.erase(trimmed.begin());
  Rational q;
  if (trimmed.empty() || q.set_str(trimmed, 10) != 0) {
    throw Error(ErrorCode::ParseError, "not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Fixed-length tuple of rationals; the tag keeps V and V* apart.
template <class Tag>
class RationalTuple {
 public:
  RationalTuple() = default;
  explicit RationalTuple(std::size_t n) : coords_(n, Rational(0)) {}
  explicit RationalTuple(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  RationalTuple(std::initializer_list<Rational> coords) : coords_(coords) {}

  static RationalTuple unit(std::size_t n, std::size_t i) {
    RationalTuple t(n);
    t.coords_[i] = 1;
    return t;
  }

  std::size_t size() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
  }

  RationalTuple& operator+=(const RationalTuple& o) {
    check_size(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  RationalTuple& operator-=(const RationalTuple& o) {
    check_size(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  RationalTuple& operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }
  friend RationalTuple operator+(RationalTuple a, const RationalTuple& b) { return a += b; }
  friend RationalTuple operator-(RationalTuple a, const RationalTuple& b) { return a -= b; }
  friend RationalTuple operator*(const Rational& s, RationalTuple a) { return a *= s; }
  friend RationalTuple operator-(RationalTuple a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  friend bool operator==(const RationalTuple& a, const RationalTuple& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const RationalTuple& a, const RationalTuple& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }
  friend bool operator!=(const RationalTuple& a, const RationalTuple& b) { return !(a == b); }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ",";
      out += weylgpd::to_string(coords_[i]);
    }
    return out + ")";
  }

 private:
  void check_size(const RationalTuple& o) const {
    if (o.size() != size()) throw Error(ErrorCode::DimensionMismatch, "tuple lengths differ");
  }

  std::vector<Rational> coords_;
};

struct CovectorTag {};
struct VectorTag {};
using Covector = RationalTuple<CovectorTag>;
using Vector = RationalTuple<VectorTag>;

/// Element of Z^I.
using IntegerVector = std::vector<Integer>;

inline IntegerVector unit_integer_vector(std::size_t n, std::size_t i) {
  IntegerVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

inline std::string to_string(const IntegerVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

inline Covector to_covector(const IntegerVector& v) {
  std::vector<Rational> c;
  c.reserve(v.size());
  for (const auto& x : v) c.emplace_back(x);
  return Covector(std::move(c));
}

/// Returns the integer coordinates of c, or nullopt if some coordinate is fractional.
inline std::optional<IntegerVector> to_integer_vector(std::span<const Rational> c) {
  IntegerVector v;
  v.reserve(c.size());
  for (const auto& q : c) {
    if (!is_integer(q)) return std::nullopt;
    v.push_back(q.get_num());
  }
  return v;
}

inline Rational evaluate(const Covector& alpha, const Vector& x) {
  if (alpha.size() != x.size()) throw Error(ErrorCode::DimensionMismatch, "covector/vector rank");
  Rational s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * x[i];
  return s;
}

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(const Rational& q) {
  const int s = sgn(q);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

inline Sign sign_at(const Covector& alpha, const Vector& x) { return sign_of(evaluate(alpha, x)); }

using RationalMatrix = std::vector<std::vector<Rational>>;

/// In-place reduced row echelon form; returns the pivot column of each nonzero row.
inline std::vector<std::size_t> row_reduce(RationalMatrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Tag>
std::size_t rank_of(std::span<const RationalTuple<Tag>> rows) {
  if (rows.empty()) return 0;
  RationalMatrix m;
  for (const auto& r : rows) m.push_back(r.coords());
  return row_reduce(m, rows.front().size()).size();
}

template <class Tag>
std::size_t rank_of(const std::vector<RationalTuple<Tag>>& rows) {
  return rank_of(std::span<const RationalTuple<Tag>>(rows));
}

/// Basis of {x in V : alpha(x) = 0 for all alpha in rows}.
inline std::vector<Vector> kernel(std::span<const Covector> rows, std::size_t dim) {
  RationalMatrix m;
  for (const auto& r : rows) {
    if (r.size() != dim) throw Error(ErrorCode::DimensionMismatch, "kernel row length");
    m.push_back(r.coords());
  }
  const auto pivots = row_reduce(m, dim);
  std::vector<bool> is_pivot(dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Vector v(dim);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Coefficients lambda with target = sum lambda_i * span_i, or nullopt if target is
/// outside the span. span need not be independent; free coefficients are set to zero.
template <class Tag>
std::optional<std::vector<Rational>> solve_in_span(std::span<const RationalTuple<Tag>> span_set,
                                                   const RationalTuple<Tag>& target) {
  const std::size_t n = span_set.size();
  const std::size_t dim = target.size();
  // Columns are the spanning vectors; augmented with the target.
  RationalMatrix m(dim, std::vector<Rational>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    if (span_set[j].size() != dim) throw Error(ErrorCode::DimensionMismatch, "span element");
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = span_set[j][i];
  }
  for (std::size_t i = 0; i < dim; ++i) m[i][n] = target[i];
  const auto pivots = row_reduce(m, n + 1);
  std::vector<Rational> lambda(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == n) return std::nullopt;
    lambda[pivots[r]] = m[r][n];
  }
  return lambda;
}

/// Coordinates of target with respect to a basis of V*.
inline std::vector<Rational> solve_coordinates(std::span<const Covector> basis,
                                               const Covector& target) {
  const std::size_t r = target.size();
  if (basis.size() != r) throw Error(ErrorCode::SingularBasis, "basis must have rank-many elements");
  RationalMatrix m(r, std::vector<Rational>(r + 1));
  for (std::size_t j = 0; j < r; ++j) {
    if (basis[j].size() != r) throw Error(ErrorCode::DimensionMismatch, "basis element length");
    for (std::size_t i = 0; i < r; ++i) m[i][j] = basis[j][i];
  }
  for (std::size_t i = 0; i < r; ++i) m[i][r] = target[i];
  const auto pivots = row_reduce(m, r);
  if (pivots.size() != r) throw Error(ErrorCode::SingularBasis, "basis is linearly dependent");
  std::vector<Rational> lambda(r);
  for (std::size_t i = 0; i < r; ++i) lambda[i] = m[i][r];
  return lambda;
}

inline std::vector<Rational> solve_coordinates(const std::vector<Covector>& basis,
                                               const Covector& target) {
  return solve_coordinates(std::span<const Covector>(basis), target);
}

/// Vectors C_j with basis_i(C_j) = delta_ij.
inline std::vector<Vector> dual_basis(std::span<const Covector> basis) {
  const std::size_t r = basis.size();
  RationalMatrix m(r, std::vector<Rational>(2 * r));
  for (std::size_t i = 0; i < r; ++i) {
    if (basis[i].size() != r) throw Error(ErrorCode::SingularBasis, "basis size differs from rank");
    for (std::size_t j = 0; j < r; ++j) m[i][j] = basis[i][j];
    m[i][r + i] = 1;
  }
  const auto pivots = row_reduce(m, r);
  if (pivots.size() != r) throw Error(ErrorCode::SingularBasis, "basis is linearly dependent");
  // Rows of the inverse of the basis matrix are in the right half; the dual vectors
  // are its columns.
  std::vector<Vector> dual(r, Vector(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k) dual[j][k] = m[k][r + j];
  return dual;
}

inline std::vector<Vector> dual_basis(const std::vector<Covector>& basis) {
  return dual_basis(std::span<const Covector>(basis));
}

/// Unique positive multiple with coprime integer coordinates and first nonzero entry positive.
template <class Tag>
RationalTuple<Tag> primitive_normalize(const RationalTuple<Tag>& alpha) {
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  bool first_negative = false;
  bool seen = false;
  for (const auto& q : alpha) {
    if (q == 0) continue;
    if (!seen) {
      first_negative = sgn(q) < 0;
      seen = true;
    }
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
  }
  if (!seen) throw Error(ErrorCode::ZeroCovector, "cannot normalize the zero covector");
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (first_negative) scale = -scale;
  return scale * alpha;
}

/// The rational q with beta = q * alpha, if beta lies on the line of alpha (alpha != 0).
template <class Tag>
std::optional<Rational> proportionality(const RationalTuple<Tag>& alpha,
                                        const RationalTuple<Tag>& beta) {
  std::optional<Rational> q;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) {
      if (beta[i] != 0) return std::nullopt;
      continue;
    }
    Rational ratio = beta[i] / alpha[i];
    if (!q) {
      q = ratio;
    } else if (*q != ratio) {
      return std::nullopt;
    }
  }
  return q;
}

/// Determinant of a square rational matrix.
inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

template <class Tag>
struct RationalTupleHash {
  std::size_t operator()(const RationalTuple<Tag>& t) const {
    std::size_t h = t.size();
    for (const auto& q : t) {
      h ^= std::hash<std::string>{}(q.get_str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace weylgpd

#endif  // WEYLGPD_EXACTLIN_HPP
