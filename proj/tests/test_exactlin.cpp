#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace weylgpd;

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational(" -1/3"), Rational(-1, 3));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
  EXPECT_EQ(to_string(ratio(-4, 2)), "-2");
  EXPECT_EQ(ratio(6, -4), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(1, 3)), "1/3");
  for (const char* bad : {"", "1/0", "abc", "1//2", "0.5"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
  }
}

TEST(Tuple, ArithmeticAndOrder) {
  const Covector a{1, 2, Rational(1, 2)};
  const Covector b{0, -1, 3};
  EXPECT_EQ(a + b, (Covector{1, 1, Rational(7, 2)}));
  EXPECT_EQ(Rational(2) * a - a, a);
  EXPECT_EQ(-(-a), a);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(evaluate(a, Vector{2, 0, 4}), Rational(4));
  EXPECT_EQ(a.to_string(), "(1,2,1/2)");
}

TEST(Tuple, PrimitiveNormalize) {
  EXPECT_EQ(primitive_normalize(Covector{Rational(-1, 2), 1, 0}), (Covector{1, -2, 0}));
  EXPECT_EQ(primitive_normalize(Covector{0, Rational(2, 3), Rational(4, 3)}), (Covector{0, 1, 2}));
  EXPECT_THROW(primitive_normalize(Covector{0, 0}), Error);
}

TEST(LinearAlgebra, KernelAndRank) {
  const std::vector<Covector> rows{{1, 1, 0}, {0, 1, 1}, {1, 2, 1}};
  EXPECT_EQ(rank_of(rows), 2u);
  const auto k = kernel(std::span<const Covector>(rows), 3);
  ASSERT_EQ(k.size(), 1u);
  for (const auto& r : rows) EXPECT_EQ(evaluate(r, k[0]), 0);
}

TEST(LinearAlgebra, SingularBasisRaises) {
  const std::vector<Covector> basis{{1, 2}, {2, 4}};
  try {
    solve_coordinates(basis, Covector{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularBasis);
  }
  EXPECT_THROW(dual_basis(basis), Error);
}

TEST(LinearAlgebra, SolveInSpan) {
  const std::vector<Covector> span{{1, 0, 0}, {0, 1, 0}};
  EXPECT_TRUE(solve_in_span(std::span<const Covector>(span), Covector{2, 3, 0}).has_value());
  EXPECT_FALSE(solve_in_span(std::span<const Covector>(span), Covector{0, 0, 1}).has_value());
}

// Random integer bases: coordinates agree with the Gauss-Jordan oracle, dual basis is dual,
// and the determinant matches the 3x3 cofactor expansion.
TEST(LinearAlgebraProperty, RandomBasesAgreeWithOracle) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> d(-6, 6);
  int checked = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<Covector> basis;
    RationalMatrix m;
    for (int i = 0; i < 3; ++i) {
      Covector c{Rational(d(rng)), Rational(d(rng)), ratio(d(rng), 1 + std::abs(d(rng)))};
      basis.push_back(c);
      m.push_back(c.coords());
    }
    const Covector target{Rational(d(rng)), ratio(d(rng), 7), Rational(d(rng))};
    const Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    ASSERT_EQ(determinant(m), det);
    if (det == 0) {
      EXPECT_THROW(solve_coordinates(basis, target), Error);
      continue;
    }
    std::vector<oracle::Vec> ob;
    for (const auto& b : basis) ob.push_back(support::to_vec(b));
    const auto expect = oracle::solve(ob, support::to_vec(target));
    ASSERT_TRUE(expect);
    const auto got = solve_coordinates(basis, target);
    ASSERT_EQ(got, *expect);
    const auto dual = dual_basis(basis);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ASSERT_EQ(evaluate(basis[i], dual[j]), Rational(i == j ? 1 : 0));
    ++checked;
  }
  EXPECT_GT(checked, 9000);
}
