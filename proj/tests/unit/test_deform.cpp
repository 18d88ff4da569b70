#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nctorus/deform.hpp"
#include "nctorus/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nctorus;
using namespace nctorus::testing;

namespace {

const GroupContext kZ2 = GroupContext::lattice(2);

FourierElement delta(const GroupPoint& p, Complex c = 1.0) { return FourierElement::delta(kZ2, p, c); }

}  // namespace

TEST(FourierElement, CanonicalForm) {
  FourierElement::Coeffs c;
  c[GroupPoint{0, 0}] = 1e-17;
  c[GroupPoint{1, 0}] = 2.0;
  const FourierElement a(kZ2, c);
  EXPECT_EQ(a.support_size(), 1u);
  EXPECT_EQ((a - a).support_size(), 0u);
  const auto z5 = GroupContext::finite({5});
  EXPECT_EQ(FourierElement::delta(z5, GroupPoint{7}).support().front(), GroupPoint({2}));
  EXPECT_THROW(FourierElement::delta(kZ2, GroupPoint{1}), ValidationError);
}

TEST(Star, DeltaExamples) {
  const auto trivial = Bicharacter::trivial(kZ2);
  EXPECT_EQ(star(delta({1, 0}), delta({0, 1}), trivial), delta({1, 1}));
  const auto half = Bicharacter::from_form(kZ2, SkewForm::standard_symplectic(2), 0.5);
  const auto prod = star(delta({1, 0}), delta({0, 1}), half);
  EXPECT_EQ(prod.support_size(), 1u);
  EXPECT_NEAR(std::abs(prod.coefficient(GroupPoint{1, 1}) - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(Star, MatchesBruteForceSum) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const RealMatrix a = random_real_matrix(2, rng);
    const double hbar = uniform(rng, -1.0, 1.0);
    const auto sigma = Bicharacter::lattice(kZ2, a, hbar);
    const auto x = random_element(kZ2, rng);
    const auto y = random_element(kZ2, rng);
    EXPECT_LE(l1_against(star(x, y, sigma), brute_star_lattice(x, y, a, hbar)), 1e-12);
  }
}

TEST(Star, ContextMismatchThrows) {
  const auto z3 = GroupContext::lattice(3);
  EXPECT_THROW(star(delta({1, 0}), FourierElement::delta(z3, GroupPoint{1, 0, 0}), Bicharacter::trivial(kZ2)),
               ContextMismatch);
}

TEST(Star, ZeroHbarIsConvolutionExactly) {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sigma = Bicharacter::from_form(kZ2, random_skew(2, rng), 0.0);
    const auto x = random_element(kZ2, rng);
    const auto y = random_element(kZ2, rng);
    EXPECT_EQ(star(x, y, sigma), convolve(x, y));
  }
}

TEST(Star, AssociativeAcrossBattery) {
  Rng rng(33);
  for (const auto& sigma : cocycle_battery(kZ2)) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_element(kZ2, rng);
      const auto b = random_element(kZ2, rng);
      const auto c = random_element(kZ2, rng);
      EXPECT_LE(l1_distance(star(star(a, b, sigma), c, sigma), star(a, star(b, c, sigma), sigma)), 1e-10);
    }
  }
}

TEST(Star, FiniteModeAssociative) {
  Rng rng(34);
  const auto ctx = GroupContext::finite({5, 5});
  for (int trial = 0; trial < 30; ++trial) {
    const auto sigma = random_finite_cocycle(ctx, rng);
    const auto a = random_element(ctx, rng);
    const auto b = random_element(ctx, rng);
    const auto c = random_element(ctx, rng);
    EXPECT_LE(l1_distance(star(star(a, b, sigma), c, sigma), star(a, star(b, c, sigma), sigma)), 1e-10);
  }
}

TEST(Star, CommutationPhase) {
  Rng rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const auto form = random_skew(2, rng);
    const double hbar = uniform(rng, -1.0, 1.0);
    const auto sigma = Bicharacter::from_form(kZ2, form, hbar);
    const auto p = random_point(kZ2, rng);
    const auto q = random_point(kZ2, rng);
    const auto sum = kZ2.add(p, q);
    const Complex pq = star(delta(p), delta(q), sigma).coefficient(sum);
    const Complex qp = star(delta(q), delta(p), sigma).coefficient(sum);
    const Complex want = std::exp(Complex(0.0, -2.0 * std::numbers::pi * hbar * form(p, q)));
    EXPECT_NEAR(std::abs(pq / qp - want), 0.0, 1e-12);
  }
}

TEST(Involution, Examples) {
  const auto sigma = Bicharacter::from_form(kZ2, SkewForm::standard_symplectic(2), 0.3);
  EXPECT_EQ(involution(delta({0, 0}, 2.5), sigma), delta({0, 0}, 2.5));
  const Complex c(0.3, -0.7);
  const auto inv = involution(delta({2, -1}, c), sigma);
  EXPECT_NEAR(std::abs(inv.coefficient(GroupPoint{-2, 1}) - std::conj(c)), 0.0, 1e-15);
}

TEST(Involution, AntiMultiplicativeAndInvolutive) {
  Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sigma = random_skew_cocycle(kZ2, rng);
    const auto a = random_element(kZ2, rng);
    const auto b = random_element(kZ2, rng);
    EXPECT_LE(l1_distance(involution(star(a, b, sigma), sigma),
                          star(involution(b, sigma), involution(a, sigma), sigma)),
              1e-12);
    EXPECT_LE(l1_distance(involution(involution(a, sigma), sigma), a), 1e-15);
  }
}

TEST(PoissonBracket, Examples) {
  const auto gamma = SkewForm::standard_symplectic(2);
  const auto br = poisson_bracket(delta({1, 0}), delta({0, 1}), gamma);
  EXPECT_NEAR(std::abs(br.coefficient(GroupPoint{1, 1}) + 4.0 * std::numbers::pi * std::numbers::pi), 0.0, 1e-12);
  Rng rng(37);
  const auto a = random_element(kZ2, rng);
  EXPECT_LE(poisson_bracket(a, a, gamma).l1_norm(), 1e-12);
  EXPECT_TRUE(poisson_bracket(a, delta({0, 0}), gamma).empty());
  EXPECT_THROW(poisson_bracket(FourierElement::delta(GroupContext::finite({5, 5}), GroupPoint{1, 0}),
                               FourierElement::delta(GroupContext::finite({5, 5}), GroupPoint{0, 1}), gamma),
               ValidationError);
}

TEST(PoissonBracket, AntisymmetricAndJacobi) {
  Rng rng(38);
  for (int trial = 0; trial < 50; ++trial) {
    const auto gamma = random_skew(2, rng);
    const auto a = random_element(kZ2, rng, 3);
    const auto b = random_element(kZ2, rng, 3);
    const auto c = random_element(kZ2, rng, 3);
    EXPECT_LE(l1_distance(poisson_bracket(a, b, gamma), Complex(-1.0) * poisson_bracket(b, a, gamma)), 1e-10);
    const auto jac = poisson_bracket(a, poisson_bracket(b, c, gamma), gamma) +
                     poisson_bracket(b, poisson_bracket(c, a, gamma), gamma) +
                     poisson_bracket(c, poisson_bracket(a, b, gamma), gamma);
    EXPECT_LE(jac.l1_norm(), 1e-8);
  }
}

TEST(Semiclassical, DeltaPairClosedForm) {
  const auto gamma = SkewForm::standard_symplectic(2);
  for (double hbar : {0.5, 1e-1, 1e-2, 1e-3, -0.2}) {
    const Complex ratio = (std::exp(Complex(0.0, -std::numbers::pi * hbar)) - 1.0) / Complex(0.0, hbar);
    const double want = std::abs(ratio + std::numbers::pi);
    EXPECT_NEAR(semiclassical_defect(delta({1, 0}), delta({0, 1}), gamma, hbar, 4), want, 1e-12);
  }
}

TEST(Semiclassical, CommutingPairIsZero) {
  const auto gamma = SkewForm::standard_symplectic(2);
  const auto a = delta({1, 0}) + delta({3, 0}, 0.5);
  const auto b = delta({-2, 0}, Complex(0, 1));
  for (double hbar : {1.0, 0.1, 0.01}) EXPECT_EQ(semiclassical_defect(a, b, gamma, hbar, 6), 0.0);
}

TEST(Semiclassical, LinearVanishing) {
  const auto gamma = SkewForm::standard_symplectic(2);
  const auto a = delta({1, 0}) + delta({-1, 0});
  const auto b = delta({0, 1}) + delta({0, -1});
  for (double hbar : {1e-2, 1e-3}) {
    const double r = semiclassical_defect(a, b, gamma, hbar / 2, 6) / semiclassical_defect(a, b, gamma, hbar, 6);
    EXPECT_GE(r, 0.45);
    EXPECT_LE(r, 0.55);
  }
}

TEST(Semiclassical, WrongScaleDoesNotVanish) {
  const auto gamma = SkewForm::standard_symplectic(2);
  const double d = semiclassical_defect(delta({1, 0}), delta({0, 1}), gamma, 1e-4, 4, 1.0);
  EXPECT_GT(d, 1.0);
  EXPECT_THROW(semiclassical_defect(delta({1, 0}), delta({0, 1}), gamma, 0.0, 4), ValidationError);
}

TEST(IteratedStar, MatchesComposedCocycle) {
  Rng rng(39);
  for (int trial = 0; trial < 50; ++trial) {
    const double hbar = uniform(rng, -1.0, 1.0);
    const auto s1 = Bicharacter::from_form(kZ2, random_skew(2, rng), hbar);
    const auto s2 = Bicharacter::from_form(kZ2, random_skew(2, rng), hbar);
    EXPECT_LE(iterated_star_check(random_element(kZ2, rng), random_element(kZ2, rng), s1, s2), 1e-12);
  }
}

TEST(IteratedStar, UndeformationRecoversConvolution) {
  Rng rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_skew_cocycle(kZ2, rng);
    const auto a = random_element(kZ2, rng);
    const auto b = random_element(kZ2, rng);
    const auto undone = iterated_star(a, b, s, s.conjugate());
    EXPECT_LE(l1_distance(undone, convolve(a, b)), 1e-13);
  }
}

TEST(Translate, AutomorphismOfDeformedProduct) {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sigma = random_lattice_cocycle(kZ2, rng);
    const auto t = random_torus_point(2, rng);
    EXPECT_LE(automorphism_check(random_element(kZ2, rng), random_element(kZ2, rng), sigma, t), 1e-12);
  }
  const std::vector<double> t = {0.25, 0.0};
  EXPECT_NEAR(std::abs(translate(delta({1, 0}), t).coefficient(GroupPoint{1, 0}) - Complex(0, 1)), 0.0, 1e-15);
  const std::vector<double> zero = {0.0, 0.0};
  const auto a = random_element(kZ2, rng);
  EXPECT_EQ(translate(a, zero), a);
}

TEST(Translate, FiniteMode) {
  Rng rng(42);
  const auto ctx = GroupContext::finite({7, 7});
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_LE(automorphism_check(random_element(ctx, rng), random_element(ctx, rng), random_finite_cocycle(ctx, rng),
                                 random_point(ctx, rng)),
              1e-12);
  }
}

TEST(Rieffel, TrivialCocycleIsPointwise) {
  Rng rng(43);
  const auto ctx = GroupContext::finite({6});
  const auto e = Bicharacter::finite(ctx, IntMatrix::Identity(1, 1));
  const auto t = LinearMap::modular(IntMatrix::Zero(1, 1), 6);
  const auto a = random_vector(ctx, rng);
  const auto b = random_vector(ctx, rng);
  EXPECT_LE(max_abs_diff(rieffel_product_finite(a, b, e, t), a.hadamard(b)), 1e-12);
  const auto one = FiniteVector::constant(ctx, 1.0);
  EXPECT_LE(max_abs_diff(rieffel_product_finite(one, b, e, t), b), 1e-12);
}

TEST(Rieffel, DualToFourierSideStar) {
  Rng rng(44);
  for (const auto& moduli : std::vector<std::vector<std::int64_t>>{{5}, {7}, {3, 3}, {5, 5}, {4, 4}}) {
    const auto ctx = GroupContext::finite(moduli);
    const auto e = Bicharacter::finite(ctx, IntMatrix::Identity(ctx.rank(), ctx.rank()));
    for (int trial = 0; trial < 20; ++trial) {
      const auto sigma = random_finite_cocycle(ctx, rng);
      const auto f = random_vector(ctx, rng);
      const auto g = random_vector(ctx, rng);
      const auto lhs = fourier(to_finite_vector(star(from_finite_vector(f), from_finite_vector(g), sigma)));
      const auto rhs = std::sqrt(static_cast<double>(ctx.order())) *
                       rieffel_product_finite(fourier(f), fourier(g), e, rieffel_dual_map(sigma, e));
      EXPECT_LE(max_abs_diff(lhs, rhs), 1e-10);
    }
  }
}

TEST(Rieffel, DegenerateEThrows) {
  const auto ctx = GroupContext::finite({5});
  const auto a = FiniteVector::constant(ctx, 1.0);
  EXPECT_THROW(rieffel_product_finite(a, a, Bicharacter::finite(ctx, IntMatrix::Zero(1, 1)),
                                      LinearMap::modular(IntMatrix::Zero(1, 1), 5)),
               PreconditionError);
}
