#include <gtest/gtest.h>

#include "support.hpp"

using namespace rankcrypt;

namespace {

std::vector<QPoly> random_space(const BinaryField& f, std::size_t dim, Rng& rng) {
  std::vector<QPoly> t;
  for (std::size_t i = 0; i < dim; ++i) t.push_back(random_qpoly(f, static_cast<std::size_t>(f.degree()), rng));
  return t;
}

class SupercodeTest : public ::testing::Test {
 protected:
  BinaryField f = BinaryField::with_default_modulus(32);
  std::shared_ptr<const EvaluationBasis> basis = std::make_shared<const EvaluationBasis>(f, power_basis(f));
  Rng rng{17};
};

TEST_F(SupercodeTest, FeasibilityCounts) {
  const Supercode code(basis, 8, random_space(f, 2, rng), 4);
  EXPECT_EQ(code.composite_dim_left(), 10U);
  EXPECT_EQ(code.feasibility_lhs_left(), 26U);
  EXPECT_EQ(code.feasibility_lhs_right(), 26U);
  EXPECT_EQ(code.generator_left().rows(), 10U);
}

TEST_F(SupercodeTest, LeftDecodingRecoversPlantedError) {
  int ok = 0;
  for (int i = 0; i < 40; ++i) {
    const auto t = random_space(f, 2, rng);
    const Supercode code(basis, 8, t, 4);
    const auto inst = rctest::plant_supercode(*basis, 8, t, 4, rng);
    try {
      const auto res = code.decode_left(inst.received);
      ok += res.error == inst.error && res.corrected == inst.codeword;
      EXPECT_EQ(res.error_support.size(), 4U);
      EXPECT_TRUE(compose_mod(f, res.annihilator, basis->interpolate(inst.error)).is_zero());
    } catch (const DecodingFailure&) {
    }
  }
  EXPECT_GE(ok, 39);
}

TEST_F(SupercodeTest, RightDecodingOfRightSpace) {
  // T given as generators of a right space: span of T_b o aX.
  int ok = 0;
  for (int i = 0; i < 40; ++i) {
    const auto t = random_space(f, 2, rng);
    const Supercode code(basis, 8, t, 4);
    QPoly p = random_qpoly(f, 8, rng);
    for (const auto& tb : t) p = p + compose_mod(f, tb, QPoly::monomial(f.random(rng), 0));
    const auto e = sample_error(f, 32, 4, rng);
    const auto y = add(basis->evaluate(p), e);
    try {
      const auto res = code.decode_right(y, true);
      ok += res.error == e;
      EXPECT_TRUE(compose_mod(f, basis->interpolate(e), res.annihilator).is_zero());
    } catch (const DecodingFailure&) {
    }
  }
  EXPECT_GE(ok, 39);
}

TEST_F(SupercodeTest, EmptyExtensionMatchesGabidulin) {
  const GabidulinCode gab(f, power_basis(f), 8);
  const Supercode code(basis, 8, {}, 6);
  for (int i = 0; i < 10; ++i) {
    const auto msg = rctest::random_message(f, 8, rng);
    const auto e = sample_error(f, 32, 6, rng);
    const auto y = add(gab.encode(msg), e);
    EXPECT_EQ(code.decode_left(y).error, gab.decode_left(y).error);
    EXPECT_EQ(code.decode_right(y).error, gab.decode_right(y).error);
  }
}

TEST_F(SupercodeTest, InfeasibleRefusedUnlessForced) {
  const Supercode code(basis, 8, random_space(f, 3, rng), 6);
  EXPECT_GT(code.feasibility_lhs_left(), 32U);
  EXPECT_THROW(code.decode_left(MidVector(32)), BadParameters);
}

TEST_F(SupercodeTest, RamessesShapedSpace) {
  // T = K o qpoly_{<=l} for a rank-w K: decodable on the right at
  // k + 3t + 2l + 1 <= n.
  const std::size_t k = 8, l = 2, t = 4;
  const auto kpoly = from_matrix(f, sample_rank_matrix(32, 32, 9, rng));
  std::vector<QPoly> tb;
  for (std::size_t j = 0; j <= l; ++j) tb.push_back(compose_mod(f, kpoly, QPoly::monomial(f.one(), j)));
  const Supercode code(basis, k + l, tb, t);
  EXPECT_LE(code.feasibility_lhs_right(), 32U);
  for (int i = 0; i < 10; ++i) {
    QPoly p = random_qpoly(f, k + l, rng) + compose_mod(f, kpoly, random_qpoly(f, l + 1, rng));
    const auto e = sample_error(f, 32, t, rng);
    EXPECT_EQ(code.decode_right(add(basis->evaluate(p), e)).error, e);
  }
}

TEST(SupportErasure, RecoversErrorFromKnownSupport) {
  const auto f = BinaryField::with_default_modulus(16);
  Rng rng(3);
  const GabidulinCode gab(f, sample_full_rank_vector(f, 16, rng), 4);
  for (int i = 0; i < 10; ++i) {
    const auto e = sample_error(f, 16, 5, rng);
    const auto y = add(gab.encode(rctest::random_message(f, 4, rng)), e);
    EXPECT_EQ(support_erasure_decode(f, gab.generator_matrix(), y, column_support(f, e)), e);
  }
}

}  // namespace
