#include <gtest/gtest.h>

#include <deque>
#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace weylgpd;

namespace {

struct Explored {
  RootSystemTable table;
  ChamberComplex cx;
};

/// 40 random spherical tables, explored once for the whole suite.
const std::vector<Explored>& pool() {
  static const std::vector<Explored> p = [] {
    std::mt19937_64 rng(2024);
    std::vector<Explored> out;
    for (auto& t : support::random_spherical_pool(40, rng)) {
      auto cx = explore_chambers(t);
      out.push_back({std::move(t), std::move(cx)});
    }
    return out;
  }();
  return p;
}

std::vector<oracle::Vec> normals(const RootSystemTable& t) {
  std::vector<oracle::Vec> h;
  for (const auto& l : t.lines()) h.push_back(support::to_vec(l.key));
  return h;
}

std::vector<int> signs(const RootSystemTable& t, const Vector& x) {
  std::vector<int> s;
  for (const auto& l : t.lines()) s.push_back(sgn(evaluate(l.key, x)));
  return s;
}

/// Gallery distances from `from` by breadth-first search on the adjacency graph.
std::vector<int> graph_distances(const ChamberComplex& cx, std::size_t from) {
  std::vector<int> d(cx.size(), -1);
  d[from] = 0;
  std::deque<std::size_t> q{from};
  while (!q.empty()) {
    const auto c = q.front();
    q.pop_front();
    for (const auto& n : cx.neighbors[c]) {
      if (n && d[*n] < 0) {
        d[*n] = d[c] + 1;
        q.push_back(*n);
      }
    }
  }
  return d;
}

}  // namespace

struct SphericalCase {
  const char* name;
  std::size_t chambers;
};

class Spherical : public ::testing::TestWithParam<SphericalCase> {};

TEST_P(Spherical, ChamberCountAndCartanMatrix) {
  const auto t = builtins::table(GetParam().name);
  const auto ext = extract_cartan_graph(t);
  EXPECT_EQ(ext.complex.size(), GetParam().chambers);
  EXPECT_EQ(ext.graph.size(), GetParam().chambers);
  EXPECT_FALSE(ext.graph.truncated);
  for (const auto& o : ext.graph.objects) EXPECT_EQ(o.cartan, builtins::gcm(GetParam().name)) << o.name;
}

INSTANTIATE_TEST_SUITE_P(Builtins, Spherical,
                         ::testing::Values(SphericalCase{"a2", 6}, SphericalCase{"b2", 8}, SphericalCase{"g2", 12},
                                           SphericalCase{"a3", 24}, SphericalCase{"b3", 48}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Table, RejectsBadInput) {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Unsupported;
  };
  EXPECT_EQ(code([] { RootSystemTable(2, {Covector{1, 0}}); }), ErrorCode::InvalidTable);
  EXPECT_EQ(code([] { RootSystemTable(2, {Covector{0, 0}}); }), ErrorCode::InvalidTable);
  EXPECT_EQ(code([] { RootSystemTable(2, {Covector{1, 0, 0}, Covector{-1, 0, 0}}); }), ErrorCode::DimensionMismatch);
  const auto a2 = builtins::table("a2");
  EXPECT_EQ(code([&] { make_chamber(a2, {Covector{1, 0}, Covector{0, 2}}); }), ErrorCode::RootNotInSystem);
  EXPECT_EQ(code([&] { make_chamber(a2, {Covector{1, 0}, Covector{1, 1}}); }), ErrorCode::NotSimplicial);
  // (0,-1) = (1,0) + (-1,-1), so this one is a base.
  EXPECT_NO_THROW(make_chamber(a2, {Covector{1, 0}, Covector{-1, -1}}));
  EXPECT_EQ(code([&] { walls_and_root_basis(a2, Vector{1, -1}); }), ErrorCode::OnHyperplane);
}

TEST(Table, Degenerate) {
  const RootSystemTable t(3, {Covector{1, 0, 0}, Covector{-1, 0, 0}, Covector{0, 1, 0}, Covector{0, -1, 0}});
  EXPECT_FALSE(is_nondegenerate(t));
  EXPECT_EQ(radical(t).size(), 1u);
  EXPECT_TRUE(is_nondegenerate(builtins::table("a3")));
}

TEST(Chamber, WallsFromPoint) {
  const auto b2 = builtins::table("b2");
  const auto walls = walls_and_root_basis(b2, Vector{1, 3});
  const auto k = make_chamber(b2, walls);
  EXPECT_EQ(chamber_id(walls), chamber_id({Covector{1, 0}, Covector{0, 1}}));
  EXPECT_EQ(k.coordinates(Covector{2, 1}), (std::vector<Rational>{2, 1}));
}

// The LP-based wall finder and chamber BFS agree with Fourier-Motzkin walls and with a
// sign-vector enumeration of all regions.
TEST(ArrangementProperty, BfsMatchesSignVectorEnumeration) {
  std::size_t tables = 0, chambers = 0;
  for (const auto& [t, cx] : pool()) {
    ASSERT_LE(t.lines().size(), 30u);
    const auto h = normals(t);
    const auto expect = oracle::sign_vectors(h);
    std::set<std::vector<int>> got;
    for (const auto& k : cx.chambers) {
      const auto s = signs(t, k.witness);
      got.insert(s);
      std::set<Covector> walls;
      for (auto i : oracle::fm_walls(h, s)) walls.insert(t.lines()[i].key);
      std::set<Covector> basis_keys;
      for (const auto& b : k.basis) basis_keys.insert(primitive_normalize(b));
      ASSERT_EQ(walls, basis_keys);
      std::set<Covector> lp_keys;
      for (const auto& b : walls_and_root_basis(t, k.witness)) lp_keys.insert(primitive_normalize(b));
      ASSERT_EQ(lp_keys, basis_keys);
      ++chambers;
    }
    ASSERT_EQ(got, expect) << "table " << tables;
    if (t.rank() == 2) {
      EXPECT_EQ(cx.size(), 2 * t.lines().size());
    }
    ++tables;
  }
  EXPECT_EQ(tables, 40u);
  EXPECT_GT(chambers, 500u);
}

// phi_K coordinates of every root are integral and of one sign (checked with the oracle solver).
TEST(ArrangementProperty, SignCoherence) {
  std::mt19937_64 rng(5);
  const auto& p = pool();
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  for (int t = 0; t < 10000; ++t) {
    const auto& [table, cx] = p[pick(rng)];
    std::uniform_int_distribution<std::size_t> c(0, cx.size() - 1), a(0, table.roots().size() - 1);
    const auto& k = cx.chambers[c(rng)];
    const auto& root = table.roots()[a(rng)];
    std::vector<oracle::Vec> basis;
    for (const auto& b : k.basis) basis.push_back(support::to_vec(b));
    const auto lambda = oracle::solve(basis, support::to_vec(root));
    ASSERT_TRUE(lambda);
    ASSERT_EQ(*lambda, k.coordinates(root));
    bool pos = false, neg = false;
    for (const auto& q : *lambda) {
      ASSERT_EQ(q.get_den(), 1);
      pos |= q > 0;
      neg |= q < 0;
    }
    ASSERT_NE(pos, neg);
  }
}

TEST(ArrangementProperty, DoubleCrossingIsIdentity) {
  std::mt19937_64 rng(6);
  const auto& p = pool();
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  for (int t = 0; t < 10000; ++t) {
    const auto& [table, cx] = p[pick(rng)];
    std::uniform_int_distribution<std::size_t> c(0, cx.size() - 1), w(0, table.rank() - 1);
    const auto& k = cx.chambers[c(rng)];
    const std::size_t i = w(rng);
    const auto l = adjacent_chamber(table, k, i);
    ASSERT_NE(l.id, k.id);
    const auto back = adjacent_chamber(table, l, i);
    ASSERT_EQ(back.basis, k.basis);
  }
}

// Across wall i: beta_i = -alpha_i and beta_j = a alpha_i + alpha_j with a = -c_ij in N_0.
TEST(ArrangementProperty, CrossingCoefficientsOnEveryEdge) {
  std::size_t edges = 0;
  for (const auto& [table, cx] : pool()) {
    for (std::size_t c = 0; c < cx.size(); ++c) {
      const auto data = cartan_matrix_at(table, cx.chambers[c]);
      for (std::size_t i = 0; i < table.rank(); ++i) {
        const auto& l = cx.chambers[*cx.neighbors[c][i]];
        const auto coeffs = crossing_coefficients(cx.chambers[c], l, i);
        for (std::size_t j = 0; j < table.rank(); ++j) {
          const auto& [a, b] = coeffs[j];
          if (j == i) {
            ASSERT_EQ(l.basis[i], -cx.chambers[c].basis[i]);
            continue;
          }
          ASSERT_EQ(b, 1);
          ASSERT_EQ(a.get_den(), 1);
          ASSERT_GE(a, 0);
          ASSERT_EQ(Rational(-data.cartan(i, j)), a);
          ++edges;
        }
      }
    }
  }
  EXPECT_GT(edges, 1000u);
}

// distance = |S(K, L)|, and the greedy gallery has that length.
TEST(ArrangementProperty, DistanceEqualsSeparatingSet) {
  std::mt19937_64 rng(8);
  const auto& p = pool();
  std::vector<std::vector<std::vector<int>>> dist(p.size());
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = pick(rng);
    const auto& [table, cx] = p[n];
    if (dist[n].empty()) {
      for (std::size_t c = 0; c < cx.size(); ++c) dist[n].push_back(graph_distances(cx, c));
    }
    std::uniform_int_distribution<std::size_t> c(0, cx.size() - 1);
    const std::size_t a = c(rng), b = c(rng);
    const auto [d, gallery] = distance_and_gallery(table, cx, a, b);
    ASSERT_EQ(static_cast<int>(d), dist[n][a][b]);
    ASSERT_EQ(gallery.crossings.size(), d);
    ASSERT_EQ(gallery.chambers.back(), b);
  }
}

TEST(ArrangementProperty, ExtractedGraphsSatisfyC1C2) {
  for (const auto& [table, cx] : pool()) {
    const auto ext = extract_cartan_graph(table);
    const auto& g = ext.graph;
    ASSERT_EQ(g.size(), cx.size());
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t i = 0; i < g.rank; ++i) {
        const auto b = g.rho(a, i);
        ASSERT_TRUE(b);
        ASSERT_EQ(g.rho(*b, i), a);
        for (std::size_t j = 0; j < g.rank; ++j) ASSERT_EQ(g.matrix(a)(i, j), g.matrix(*b)(i, j));
      }
    }
  }
}

TEST(Crystallographic, PoolPasses) {
  for (const auto& [table, cx] : pool()) EXPECT_TRUE(check_crystallographic(table, cx).passed);
}

TEST(Crystallographic, RescaledAffineWitness) {
  const auto rep = check_crystallographic(builtins::table("aff-a1-rescaled"));
  ASSERT_FALSE(rep.passed);
  bool found = false;
  for (const auto& w : rep.witnesses) {
    if (chamber_id(w.basis) == chamber_id({Covector{2, 4}, Covector{0, -1}}) && w.root == Covector{1, 0}) {
      // e1 = 1/2 (2,4) + 2 (0,-1)
      std::map<Covector, Rational> combo;
      for (std::size_t k = 0; k < 2; ++k) combo[w.basis[k]] = w.coordinates[k];
      EXPECT_EQ(combo.at(Covector{2, 4}), Rational(1, 2));
      EXPECT_EQ(combo.at(Covector{0, -1}), Rational(2));
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(check_crystallographic(builtins::table("aff-a1")).passed);
}

TEST(Crystallographic, NotCrystallographicAtOnExtraction) {
  try {
    extract_cartan_graph(builtins::table("aff-a1-rescaled"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCrystallographicAt);
  }
}

TEST(Additive, AffineFailsWithTwoAlphaOnePlusAlphaTwo) {
  const auto rep = check_additive(builtins::table("aff-a1"));
  ASSERT_FALSE(rep.passed);
  bool found = false;
  for (const auto& w : rep.witnesses)
    if (w.basis == std::vector<Covector>{Covector{1, 0}, Covector{0, 1}} && w.root == Covector{2, 1}) found = true;
  EXPECT_TRUE(found);
}

TEST(Additive, SphericalPass) {
  for (const char* name : {"a2", "b2", "g2", "a3", "b3"}) EXPECT_TRUE(check_additive(builtins::table(name)).passed) << name;
}

TEST(KSpherical, AffineA1) {
  const auto t = builtins::table("aff-a1");
  EXPECT_TRUE(check_k_spherical(t, 1).passed);
  EXPECT_FALSE(check_k_spherical(t, 2).passed);
  EXPECT_TRUE(check_k_spherical(builtins::table("b3"), 2).passed);
  const RootSystemTable trunc(2, builtins::table("a2").roots(), ConeSpec::truncated(3));
  EXPECT_THROW(check_k_spherical(trunc, 1), Error);
}

TEST(Affine, BoundaryAndCertification) {
  const auto t = builtins::table("aff-a1", 4);
  const auto cx = explore_chambers(t);
  EXPECT_EQ(cx.size(), 9u);  // distance <= 4 on both sides of the seed
  EXPECT_EQ(cx.certified_count(), 7u);
  for (std::size_t c = 0; c < cx.size(); ++c) EXPECT_EQ(cx.certified[c], cx.distance[c] < 4);
}
