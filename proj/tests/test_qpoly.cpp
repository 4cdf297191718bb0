#include <gtest/gtest.h>

#include "support.hpp"

using namespace rankcrypt;

namespace {

class QPolyLaws : public ::testing::Test {
 protected:
  BinaryField f = BinaryField::with_default_modulus(12);
  Rng rng{42};

  // Random q-polynomial of prescribed rank r.
  QPoly random_rank(std::size_t r) { return from_matrix(f, sample_rank_matrix(12, 12, r, rng)); }
};

TEST_F(QPolyLaws, EvaluationIsLinearAndMatchesMatrix) {
  for (int i = 0; i < 50; ++i) {
    const auto p = random_qpoly(f, 12, rng);
    const auto a = f.random(rng), b = f.random(rng);
    EXPECT_EQ(evaluate(f, p, f.add(a, b)), f.add(evaluate(f, p, a), evaluate(f, p, b)));
    EXPECT_EQ(from_matrix(f, matrix_rep(f, p)), reduce(f, p));
  }
}

TEST_F(QPolyLaws, CompositionIsEvaluationComposition) {
  for (int i = 0; i < 50; ++i) {
    const auto p = random_qpoly(f, 15, rng), q = random_qpoly(f, 15, rng);
    const auto x = f.random(rng);
    EXPECT_EQ(evaluate(f, compose(f, p, q), x), evaluate(f, p, evaluate(f, q, x)));
    EXPECT_EQ(compose_mod(f, p, q), reduce(f, compose(f, p, q)));
  }
}

TEST_F(QPolyLaws, AdjointInvolutionAndAnticommutation) {
  for (int i = 0; i < 500; ++i) {
    const auto p = random_qpoly(f, 12, rng), q = random_qpoly(f, 12, rng);
    ASSERT_EQ(adjoint(f, adjoint(f, p)), p);
    ASSERT_EQ(adjoint(f, compose_mod(f, p, q)), compose_mod(f, adjoint(f, q), adjoint(f, p)));
    ASSERT_EQ(rank(f, p), rank(f, adjoint(f, p)));
  }
}

TEST_F(QPolyLaws, AdjointIsTraceTranspose) {
  for (int i = 0; i < 50; ++i) {
    const auto p = random_qpoly(f, 12, rng), pa = adjoint(f, p);
    const auto x = f.random(rng), y = f.random(rng);
    EXPECT_EQ(f.trace(f.mul(evaluate(f, p, x), y)), f.trace(f.mul(x, evaluate(f, pa, y))));
  }
}

TEST_F(QPolyLaws, EuclideanDivisionReconstructs) {
  for (int i = 0; i < 500; ++i) {
    const auto a = random_qpoly(f, 1 + rng() % 20, rng);
    auto b = random_qpoly(f, 1 + rng() % 8, rng);
    if (b.is_zero()) b = QPoly::identity();
    const auto r = right_divide(f, a, b);
    ASSERT_EQ(compose(f, r.quotient, b) + r.remainder, a);
    ASSERT_LT(r.remainder.q_degree(), b.q_degree());
    const auto l = left_divide(f, a, b);
    ASSERT_EQ(compose(f, b, l.quotient) + l.remainder, a);
    ASSERT_LT(l.remainder.q_degree(), b.q_degree());
  }
  EXPECT_THROW(right_divide(f, QPoly::identity(), QPoly()), DivisionByZero);
}

TEST_F(QPolyLaws, AnnihilatorIdentities) {
  for (int i = 0; i < 500; ++i) {
    const std::size_t r = rng() % 13;
    const auto e = random_rank(r);
    const auto vl = left_annihilator(f, e), vr = right_annihilator(f, e);
    ASSERT_TRUE(vl.is_monic());
    ASSERT_TRUE(vr.is_monic());
    ASSERT_EQ(vl.q_degree(), static_cast<int>(r));
    ASSERT_EQ(vr.q_degree(), static_cast<int>(r));
    ASSERT_TRUE(compose_mod(f, vl, e).is_zero());
    ASSERT_TRUE(compose_mod(f, e, vr).is_zero());
  }
}

TEST_F(QPolyLaws, SubspacePolynomialKernel) {
  for (int i = 0; i < 30; ++i) {
    const std::size_t r = rng() % 12;
    const auto span = sample_rank_t_vector(f, 12, r, rng);
    const auto v = subspace_polynomial(f, span);
    EXPECT_EQ(v.q_degree(), static_cast<int>(r));
    for (const auto& x : span) EXPECT_TRUE(evaluate(f, v, x).is_zero());
    EXPECT_EQ(kernel_basis(f, v).size(), r);
  }
}

TEST_F(QPolyLaws, InterpolationAtAnyBasis) {
  const auto g = sample_full_rank_vector(f, 12, rng);
  const EvaluationBasis basis(f, g);
  for (int i = 0; i < 50; ++i) {
    MidVector y(12);
    for (auto& v : y) v = f.random(rng);
    const auto p = basis.interpolate(y);
    EXPECT_LT(p.q_degree(), 12);
    EXPECT_EQ(basis.evaluate(p), y);
    const auto x = f.random(rng);
    const auto c = basis.coordinates(x);
    MidElement back = f.zero();
    for (std::size_t j = 0; j < 12; ++j)
      if (c[j]) back += g[j];
    EXPECT_EQ(back, x);
    EXPECT_EQ(from_matrix(matrix_rep(p, basis), basis), p);
  }
  MidVector dependent = g;
  dependent[5] = f.add(g[0], g[1]);
  EXPECT_THROW(EvaluationBasis(f, dependent), NotABasis);
}

TEST(Annihilators, AgreeWithExhaustiveSearch) {
  const auto f = BinaryField::with_default_modulus(6);
  Rng rng(5);
  for (std::size_t r = 0; r <= 2; ++r)
    for (int i = 0; i < 4; ++i) {
      const auto e = from_matrix(f, sample_rank_matrix(6, 6, r, rng));
      const auto left = rctest::brute_force_annihilators(f, e, true, r);
      const auto right = rctest::brute_force_annihilators(f, e, false, r);
      ASSERT_EQ(left.size(), 1U);
      ASSERT_EQ(right.size(), 1U);
      EXPECT_EQ(left[0], left_annihilator(f, e));
      EXPECT_EQ(right[0], right_annihilator(f, e));
    }
}

TEST(QPoly, ZeroAndIdentity) {
  const auto f = BinaryField::with_default_modulus(8);
  EXPECT_EQ(QPoly().q_degree(), kZeroQDegree);
  EXPECT_TRUE(QPoly().is_zero());
  EXPECT_EQ(QPoly::identity().q_degree(), 0);
  EXPECT_EQ(rank(f, QPoly::identity()), 8U);
  // X^{q^m} reduces to X.
  EXPECT_EQ(reduce(f, QPoly::monomial(f.one(), 8)), QPoly::identity());
}

}  // namespace
