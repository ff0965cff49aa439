#ifndef WEYLGPD_BUILTINS_HPP
#define WEYLGPD_BUILTINS_HPP

// Named example systems. Tables are generated from root formulas, never from coordinate dumps.

#include <string>
#include <vector>

#include "weylgpd/arrangement.hpp"
#include "weylgpd/cartan.hpp"

namespace weylgpd::builtins {

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"a2", "b2", "g2", "a3", "b3", "f4", "aff-a1", "aff-a1-rescaled"};
  return n;
}

inline bool is_builtin(const std::string& name) {
  for (const auto& n : names())
    if (n == name) return true;
  return false;
}

inline GeneralizedCartanMatrix gcm(const std::string& name) {
  if (name == "a2") return {{2, -1}, {-1, 2}};
  if (name == "b2") return {{2, -2}, {-1, 2}};
  if (name == "g2") return {{2, -3}, {-1, 2}};
  if (name == "a3") return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  if (name == "b3") return {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
  if (name == "f4") return {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
  if (name == "aff-a1") return {{2, -2}, {-2, 2}};
  throw Error(ErrorCode::Unsupported, "no Cartan matrix for builtin '" + name + "'");
}

inline CartanGraph graph(const std::string& name) { return CartanGraph::standard(gcm(name)); }

namespace detail {

inline Covector cov(std::initializer_list<Rational> c) { return Covector(c); }

inline std::vector<Covector> with_negatives(const std::vector<Covector>& positive) {
  std::vector<Covector> out;
  for (const auto& a : positive) out.push_back(a);
  for (const auto& a : positive) out.push_back(-a);
  return out;
}

inline std::vector<Covector> standard_seed(std::size_t r) {
  std::vector<Covector> s;
  for (std::size_t i = 0; i < r; ++i) s.push_back(Covector::unit(r, i));
  return s;
}

}  // namespace detail

/// The three type classes: two entries +-1; one entry +-1; all entries +-1/2.
inline std::vector<Covector> f4_roots() {
  std::vector<Covector> out;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      for (int sa : {1, -1})
        for (int sb : {1, -1}) {
          Covector v(4);
          v[a] = sa;
          v[b] = sb;
          out.push_back(v);
        }
  for (std::size_t a = 0; a < 4; ++a)
    for (int s : {1, -1}) {
      Covector v(4);
      v[a] = s;
      out.push_back(v);
    }
  for (int mask = 0; mask < 16; ++mask) {
    Covector v(4);
    for (std::size_t a = 0; a < 4; ++a) v[a] = Rational((mask >> a) & 1 ? -1 : 1, 2);
    out.push_back(v);
  }
  return out;
}

inline std::vector<Covector> f4_simple_roots() {
  return {detail::cov({0, 1, -1, 0}), detail::cov({0, 0, 1, -1}), detail::cov({0, 0, 0, 1}),
          detail::cov({Rational(1, 2), Rational(-1, 2), Rational(-1, 2), Rational(-1, 2)})};
}

/// e_i + k gamma (gamma = e_1 + e_2) for k = 0..max_k, optionally scaled by k + 1.
inline std::vector<Covector> affine_a1_roots(int max_k, bool rescaled) {
  std::vector<Covector> pos;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k <= max_k; ++k) {
      Covector v{Rational(k), Rational(k)};
      v[i] += 1;
      if (rescaled) v *= Rational(k + 1);
      pos.push_back(v);
    }
  return detail::with_negatives(pos);
}

inline RootSystemTable table(const std::string& name, int truncation = 5) {
  using detail::cov;
  if (name == "a2") {
    return {2, detail::with_negatives({cov({1, 0}), cov({0, 1}), cov({1, 1})}), ConeSpec::spherical(),
            detail::standard_seed(2)};
  }
  if (name == "b2") {
    return {2, detail::with_negatives({cov({1, 0}), cov({0, 1}), cov({1, 1}), cov({2, 1})}), ConeSpec::spherical(),
            detail::standard_seed(2)};
  }
  if (name == "g2") {
    return {2,
            detail::with_negatives({cov({1, 0}), cov({0, 1}), cov({1, 1}), cov({2, 1}), cov({3, 1}), cov({3, 2})}),
            ConeSpec::spherical(), detail::standard_seed(2)};
  }
  if (name == "a3") {
    return {3,
            detail::with_negatives({cov({1, 0, 0}), cov({0, 1, 0}), cov({0, 0, 1}), cov({1, 1, 0}), cov({0, 1, 1}),
                                    cov({1, 1, 1})}),
            ConeSpec::spherical(), detail::standard_seed(3)};
  }
  if (name == "b3") {
    std::vector<Covector> roots;
    for (std::size_t a = 0; a < 3; ++a) {
      for (int s : {1, -1}) {
        Covector v(3);
        v[a] = s;
        roots.push_back(v);
      }
      for (std::size_t b = a + 1; b < 3; ++b)
        for (int sa : {1, -1})
          for (int sb : {1, -1}) {
            Covector v(3);
            v[a] = sa;
            v[b] = sb;
            roots.push_back(v);
          }
    }
    return {3, roots, ConeSpec::spherical(), std::vector<Covector>{cov({1, -1, 0}), cov({0, 1, -1}), cov({0, 0, 1})}};
  }
  if (name == "f4") return {4, f4_roots(), ConeSpec::spherical(), f4_simple_roots()};
  if (name == "aff-a1" || name == "aff-a1-rescaled") {
    return {2, affine_a1_roots(truncation, name == "aff-a1-rescaled"), ConeSpec::affine(cov({1, 1}), truncation),
            detail::standard_seed(2)};
  }
  throw Error(ErrorCode::ParseError, "unknown builtin '" + name + "'");
}

}  // namespace weylgpd::builtins

#endif  // WEYLGPD_BUILTINS_HPP
