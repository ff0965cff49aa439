#pragma once
// Shared fixtures: random crystallographic tables and conversions to oracle types.

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "weylgpd/weylgpd.hpp"

namespace support {

using namespace weylgpd;

inline oracle::Vec to_vec(const Covector& a) { return {a.begin(), a.end()}; }
inline oracle::Vec to_vec(const Vector& a) { return {a.begin(), a.end()}; }

/// Quiddity sequence of a random triangulation of an n-gon (ear insertion).
inline std::vector<long> random_quiddity(std::size_t n, std::mt19937_64& rng) {
  std::vector<long> q{1, 1, 1};
  while (q.size() < n) {
    std::uniform_int_distribution<std::size_t> pick(0, q.size() - 1);
    const std::size_t i = pick(rng);
    const std::size_t j = (i + 1) % q.size();
    ++q[i];
    ++q[j];
    q.insert(q.begin() + static_cast<long>(i) + 1, 1);
  }
  return q;
}

/// Random matrix in GL(r, Z): product of elementary operations and sign flips.
inline IntegerMatrix random_unimodular(std::size_t r, std::mt19937_64& rng, int steps = 6) {
  IntegerMatrix u = identity_matrix(r);
  std::uniform_int_distribution<std::size_t> idx(0, r - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t a = idx(rng), b = idx(rng);
    if (a == b) {
      for (auto& row : u) row[a] = -row[a];
      continue;
    }
    const int c = coef(rng);
    for (auto& row : u) row[a] += c * row[b];
  }
  return u;
}

/// alpha -> alpha U, applied to roots, seed and gamma.
inline RootSystemTable transform(const RootSystemTable& t, const IntegerMatrix& u) {
  auto map = [&](const Covector& a) {
    Covector b(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = 0; k < a.size(); ++k) b[j] += a[k] * Rational(u[k][j]);
    return b;
  };
  std::vector<Covector> roots;
  for (const auto& a : t.roots()) roots.push_back(map(a));
  ConeSpec cone = t.cone();
  if (cone.gamma) cone.gamma = map(*cone.gamma);
  std::optional<std::vector<Covector>> seed;
  if (t.seed()) {
    seed.emplace();
    for (const auto& b : *t.seed()) seed->push_back(map(b));
  }
  return RootSystemTable(t.rank(), std::move(roots), cone, std::move(seed));
}

/// Direct sum of two spherical tables.
inline RootSystemTable direct_sum(const RootSystemTable& a, const RootSystemTable& b) {
  const std::size_t r = a.rank() + b.rank();
  std::vector<Covector> roots;
  for (const auto& x : a.roots()) {
    Covector c(r);
    for (std::size_t k = 0; k < a.rank(); ++k) c[k] = x[k];
    roots.push_back(std::move(c));
  }
  for (const auto& x : b.roots()) {
    Covector c(r);
    for (std::size_t k = 0; k < b.rank(); ++k) c[a.rank() + k] = x[k];
    roots.push_back(std::move(c));
  }
  return RootSystemTable(r, std::move(roots));
}

inline RootSystemTable a1() { return RootSystemTable(1, {Covector{1}, Covector{-1}}); }

inline RootSystemTable rank2_from_quiddity(const std::vector<long>& q) {
  return realize(sequence_graph(q), 0, 64).table;
}

/// Spherical crystallographic tables of rank 2 and 3, under random changes of basis.
inline std::vector<RootSystemTable> random_spherical_pool(std::size_t count, std::mt19937_64& rng,
                                                          std::size_t max_lines = 30) {
  std::vector<RootSystemTable> rank3{builtins::table("a3"), builtins::table("b3"),
                                     direct_sum(a1(), builtins::table("a2")), direct_sum(a1(), builtins::table("b2")),
                                     direct_sum(a1(), builtins::table("g2")), direct_sum(a1(), direct_sum(a1(), a1())),
                                     direct_sum(a1(), rank2_from_quiddity({1, 2, 2, 2, 1, 4}))};
  std::vector<RootSystemTable> out;
  std::uniform_int_distribution<std::size_t> n_dist(3, max_lines);
  std::uniform_int_distribution<std::size_t> pick3(0, rank3.size() - 1);
  while (out.size() < count) {
    if (out.size() % 2 == 0) {
      const auto base = rank2_from_quiddity(random_quiddity(n_dist(rng), rng));
      out.push_back(transform(base, random_unimodular(2, rng)));
    } else {
      out.push_back(transform(rank3[pick3(rng)], random_unimodular(3, rng)));
    }
  }
  return out;
}

}  // namespace support
