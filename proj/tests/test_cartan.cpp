#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace weylgpd;

namespace {

std::vector<std::vector<long>> as_longs(const GeneralizedCartanMatrix& c) {
  std::vector<std::vector<long>> out;
  for (const auto& row : c.entries()) {
    std::vector<long> r;
    for (const auto& x : row) r.push_back(x.get_si());
    out.push_back(r);
  }
  return out;
}

std::set<std::vector<long>> as_longs(const std::set<IntegerVector>& s) {
  std::set<std::vector<long>> out;
  for (const auto& v : s) {
    std::vector<long> r;
    for (const auto& x : v) r.push_back(x.get_si());
    out.insert(r);
  }
  return out;
}

}  // namespace

TEST(Gcm, Validation) {
  EXPECT_TRUE(validate_gcm(builtins::gcm("g2").entries()).valid());
  const IntegerMatrix bad{{2, 0}, {-1, 2}};
  const auto rep = validate_gcm(bad);
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations.front().axiom, "M2");
  const IntegerMatrix diag{{1, -1}, {-1, 2}};
  EXPECT_EQ(validate_gcm(diag).violations.front().axiom, "M1");
  const IntegerMatrix pos{{2, 1}, {1, 2}};
  EXPECT_EQ(validate_gcm(pos).violations.front().axiom, "M1");
  const IntegerMatrix ragged{{2, -1}, {-1}};
  try {
    validate_gcm(ragged);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSquare);
  }
  try {
    GeneralizedCartanMatrix m(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidMatrix);
  }
}

TEST(Gcm, ReflectionExamples) {
  const auto a2 = builtins::gcm("a2");
  EXPECT_EQ(reflect(a2, 0, unit_integer_vector(2, 1)), (IntegerVector{1, 1}));
  EXPECT_EQ(reflect(a2, 0, unit_integer_vector(2, 0)), (IntegerVector{-1, 0}));
  const auto b2 = builtins::gcm("b2");
  EXPECT_EQ(reflect(b2, 0, unit_integer_vector(2, 1)), (IntegerVector{2, 1}));
}

// sigma_i is an involution sending alpha_i to -alpha_i, for random GCMs and vectors.
TEST(GcmProperty, ReflectionsAreInvolutions) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> off(0, 4), val(-9, 9), dim(2, 5);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = dim(rng);
    IntegerMatrix m(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = 2;
      for (std::size_t j = i + 1; j < n; ++j) {
        const int a = off(rng);
        if (a == 0) continue;
        m[i][j] = -a;
        m[j][i] = -(1 + off(rng));
      }
    }
    const GeneralizedCartanMatrix c(m);
    IntegerVector v(n);
    for (auto& x : v) x = val(rng);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(reflect(c, i, reflect(c, i, v)), v);
      auto minus = unit_integer_vector(n, i);
      minus[i] = -1;
      ASSERT_EQ(reflect(c, i, unit_integer_vector(n, i)), minus);
      ASSERT_EQ(weylgpd::apply(c.reflection_matrix(i), v), reflect(c, i, v));
    }
  }
}

struct FiniteCase {
  const char* name;
  std::size_t positive;
};

class FiniteRoots : public ::testing::TestWithParam<FiniteCase> {};

TEST_P(FiniteRoots, MatchWeylClosure) {
  const auto g = builtins::graph(GetParam().name);
  const auto rs = generate_real_roots(g, 0, 40);
  ASSERT_TRUE(rs.complete);
  EXPECT_EQ(rs.at(0).size(), 2 * GetParam().positive);
  const auto expect = oracle::weyl_closure(as_longs(g.matrix(0)), 1000);
  EXPECT_EQ(as_longs(rs.root_set(0)), expect);
}

INSTANTIATE_TEST_SUITE_P(Builtins, FiniteRoots,
                         ::testing::Values(FiniteCase{"a2", 3}, FiniteCase{"b2", 4}, FiniteCase{"g2", 6},
                                           FiniteCase{"a3", 6}, FiniteCase{"b3", 9}, FiniteCase{"f4", 24}),
                         [](const auto& info) { return std::string(info.param.name); });

// Word lengths by breadth-first search over root vectors; every root is e_i + k gamma.
TEST(RealRoots, AffineA1MatchesFormula) {
  const int depth = 10;
  const auto rs = generate_real_roots(builtins::graph("aff-a1"), 0, depth);
  EXPECT_FALSE(rs.complete);
  std::map<std::vector<long>, int> length;
  std::vector<std::vector<long>> layer{{1, 0}, {0, 1}};
  for (const auto& v : layer) length[v] = 0;
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::vector<long>> next;
    for (const auto& v : layer) {
      for (int i = 0; i < 2; ++i) {
        auto w = v;
        w[i] -= 2 * v[i] - 2 * v[1 - i];
        if (length.emplace(w, len).second) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::set<IntegerVector> formula;
  for (long k = -depth; k <= depth; ++k) {
    for (int i = 0; i < 2; ++i) {
      std::vector<long> v{k, k};
      v[i] += 1;
      if (length.count(v)) formula.insert(IntegerVector{v[0], v[1]});
    }
  }
  EXPECT_EQ(formula.size(), length.size());  // nothing outside the formula is reachable
  EXPECT_EQ(rs.root_set(0), formula);
  for (const auto& [v, len] : rs.at(0)) EXPECT_EQ(len, length.at({v[0].get_si(), v[1].get_si()})) << to_string(v);
  EXPECT_EQ(formula.size(), 2u * (2 * depth + 1));  // k in [-depth, depth], length |k|
}

TEST(RealRoots, MijCounts) {
  for (auto [name, m] : {std::pair{"a2", 3u}, {"b2", 4u}, {"g2", 6u}}) {
    const auto rs = generate_real_roots(builtins::graph(name), 0, 20);
    const auto r = m_ij(rs, 0, 0, 1);
    ASSERT_TRUE(r.value) << name;
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(*r.value, m) << name;
  }
  const auto aff = generate_real_roots(builtins::graph("aff-a1"), 0, 8);
  EXPECT_FALSE(m_ij(aff, 0, 0, 1).value);
}

TEST(Axioms, FiniteBuiltinsPass) {
  for (const char* name : {"a2", "b2", "g2", "a3"}) {
    const auto g = builtins::graph(name);
    const auto rs = generate_real_roots(g, 0, 40);
    const auto rep = check_root_system_axioms(g, rs);
    EXPECT_TRUE(rep.all_pass()) << name;
  }
}

TEST(Axioms, AffineR4IsInsufficientDepth) {
  const auto g = builtins::graph("aff-a1");
  const auto rep = check_root_system_axioms(g, generate_real_roots(g, 0, 10));
  EXPECT_EQ(rep.r1.status, AxiomStatus::Pass);
  EXPECT_EQ(rep.r2.status, AxiomStatus::Pass);
  EXPECT_EQ(rep.r3.status, AxiomStatus::Pass);
  EXPECT_EQ(rep.r4.status, AxiomStatus::InsufficientDepth);
}

TEST(Graph, C1C2Violations) {
  auto g = sequence_graph({1, 2, 2, 2, 1, 4});
  EXPECT_TRUE(check_cartan_graph(g).valid());
  auto broken = g;
  broken.objects[0].cartan = GeneralizedCartanMatrix{{2, -3}, {-3, 2}};
  const auto rep = check_cartan_graph(broken);
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations.front().axiom, "C2");
  auto c1 = g;
  c1.objects[0].rho[0] = 3;
  EXPECT_EQ(check_cartan_graph(c1).violations.front().axiom, "C1");
}

TEST(Graph, SimplyConnected) {
  const auto cyc = sequence_graph({1, 2, 2, 2, 1, 4});
  EXPECT_FALSE(check_simply_connected(cyc, 30).violation);
  // The one-object explicit B2 graph: rho_1 rho_2 rho_1 rho_2 ... loops at a with nontrivial morphisms.
  CartanGraph b2 = CartanGraph::standard(builtins::gcm("b2"));
  b2.lazy = false;
  const auto rep = check_simply_connected(b2, 4);
  ASSERT_TRUE(rep.violation);
  EXPECT_NE(rep.loop_matrix, identity_matrix(2));
  EXPECT_EQ(path_morphism(b2, 0, rep.loop_word).matrix, rep.loop_matrix);
}

TEST(Graph, ResidueOfA3) {
  const auto re = realize(builtins::graph("a3"), 0, 20);
  const auto res = residue(re.realized_graph(), 0, {0, 1});
  EXPECT_EQ(res.size(), 6u);
  EXPECT_EQ(res.rank, 2u);
  EXPECT_TRUE(check_cartan_graph(res).valid());
}
