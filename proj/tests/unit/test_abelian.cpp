#include <gtest/gtest.h>

#include "nctorus/abelian.hpp"
#include "nctorus/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nctorus;
using namespace nctorus::testing;

TEST(UnitPhase, QuarterTurnsAreExact) {
  EXPECT_EQ(unit_phase(0.0), Complex(1.0, 0.0));
  EXPECT_EQ(unit_phase(0.25), Complex(0.0, 1.0));
  EXPECT_EQ(unit_phase(0.5), Complex(-1.0, 0.0));
  EXPECT_EQ(unit_phase(-0.25), Complex(0.0, -1.0));
  EXPECT_EQ(unit_phase(3.0), Complex(1.0, 0.0));
}

TEST(GroupContext, FiniteReductionAndEnumeration) {
  const auto ctx = GroupContext::finite({5, 3});
  EXPECT_EQ(ctx.order(), 15u);
  EXPECT_EQ(ctx.point({-1, 7}), GroupPoint({4, 1}));
  EXPECT_EQ(ctx.add(GroupPoint{4, 2}, GroupPoint{3, 2}), GroupPoint({2, 1}));
  for (std::size_t i = 0; i < ctx.order(); ++i) EXPECT_EQ(ctx.index_of(ctx.point_at(i)), i);
  EXPECT_NEAR(ctx.norm_const(), 1.0 / std::sqrt(15.0), 1e-15);
}

TEST(GroupContext, RejectsBadInput) {
  EXPECT_THROW(GroupContext::finite({0}), ValidationError);
  EXPECT_THROW(GroupContext::lattice(0), ValidationError);
  const auto ctx = GroupContext::lattice(2);
  EXPECT_THROW(ctx.point({1, 2, 3}), ValidationError);
  EXPECT_THROW(ctx.order(), ValidationError);
}

TEST(Pairing, FiniteValues) {
  const auto ctx = GroupContext::finite({4});
  EXPECT_EQ(pairing(ctx, GroupPoint{1}, GroupPoint{1}), Complex(0.0, 1.0));
  EXPECT_EQ(pairing(ctx, GroupPoint{2}, GroupPoint{3}), Complex(-1.0, 0.0));
  const auto z5 = GroupContext::finite({5});
  EXPECT_NEAR(std::abs(pairing(z5, GroupPoint{2}, GroupPoint{3}) - std::exp(Complex(0, 2 * std::numbers::pi * 6 / 5.0))), 0.0, 1e-15);
}

TEST(Pairing, LatticeToTorus) {
  const auto ctx = GroupContext::lattice(2);
  const std::vector<double> t = {0.25, 0.5};
  EXPECT_NEAR(std::abs(pairing(ctx, GroupPoint{1, 1}, t) - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(Fourier, MatchesBruteForceDft) {
  Rng rng(11);
  for (const auto& moduli : std::vector<std::vector<std::int64_t>>{{5}, {7}, {3, 4}, {2, 2, 3}}) {
    const auto ctx = GroupContext::finite(moduli);
    const auto f = random_vector(ctx, rng);
    const auto want = brute_dft(ctx, f.values(), +1);
    const auto got = fourier(f);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, 1e-12);
  }
}

TEST(Fourier, ParsevalAndInversion) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ctx = GroupContext::finite({static_cast<std::int64_t>(uniform_int(rng, 2, 9)), 3});
    const auto f = random_vector(ctx, rng);
    EXPECT_NEAR(fourier(f).l2_norm(), f.l2_norm(), 1e-12);
    EXPECT_LE(max_abs_diff(inverse_fourier(fourier(f)), f), 1e-12);
  }
}

TEST(FiniteVector, TranslationAndHadamard) {
  const auto ctx = GroupContext::finite({6});
  const auto d = FiniteVector::delta(ctx, GroupPoint{2});
  // g(v) = f(v + w): delta at 2 moves to 2 - w.
  EXPECT_EQ(d.translated(GroupPoint{1}).at(GroupPoint{1}), Complex(1.0));
  const auto c = FiniteVector::constant(ctx, 3.0);
  EXPECT_EQ(c.hadamard(d).at(GroupPoint{2}), Complex(3.0));
  EXPECT_THROW(d + FiniteVector(GroupContext::finite({5})), ContextMismatch);
}
