#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nctorus/errors.hpp"
#include "nctorus/norms.hpp"
#include "support/generators.hpp"

using namespace nctorus;
using namespace nctorus::testing;

namespace {

const GroupContext kZ2 = GroupContext::lattice(2);

FourierElement cos_element() {
  return FourierElement::delta(kZ2, GroupPoint{1, 0}) + FourierElement::delta(kZ2, GroupPoint{-1, 0});
}

// Top eigenvalue of the adjacency matrix of a path with 2W + 1 vertices.
double path_oracle(int w) { return 2.0 * std::cos(std::numbers::pi / (2.0 * w + 2.0)); }

}  // namespace

TEST(Window, IndexRoundTrip) {
  const WindowIndex idx(2, Window{3});
  EXPECT_EQ(idx.size(), 49u);
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(*idx.index_of(idx.point_at(i)), i);
  EXPECT_FALSE(idx.index_of(GroupPoint{4, 0}).has_value());
}

TEST(LeftMult, ColumnsAreStarProducts) {
  Rng rng(81);
  const auto sigma = random_skew_cocycle(kZ2, rng);
  const auto a = random_element(kZ2, rng, 5, 2);
  const Window w{4};
  const WindowIndex idx(2, w);
  const auto m = left_mult_matrix(a, sigma, w);
  for (std::size_t c = 0; c < idx.size(); c += 7) {
    const auto prod = star(a, FourierElement::delta(kZ2, idx.point_at(c)), sigma);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      EXPECT_NEAR(std::abs(m(r, c) - prod.coefficient(idx.point_at(r))), 0.0, 1e-15);
    }
  }
  EXPECT_LE((DenseMatrix(left_mult_operator(a, sigma, w)) - m).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(left_mult_matrix(a, sigma, Window{1}), ValidationError);
}

TEST(Norm, MonomialIsExact) {
  Rng rng(82);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sigma = random_skew_cocycle(kZ2, rng);
    const auto p = random_point(kZ2, rng, 3);
    EXPECT_EQ(op_norm_estimate(FourierElement::delta(kZ2, p), sigma, Window{5}), 1.0);
    const Complex c = unit_disc(rng);
    const auto est = estimate_norm(FourierElement::delta(kZ2, p, c), sigma, Window{5});
    EXPECT_EQ(est.value, std::abs(c));
    EXPECT_EQ(est.method, NormMethod::Monomial);
  }
  EXPECT_EQ(op_norm_estimate(FourierElement(kZ2), Bicharacter::trivial(kZ2), Window{2}), 0.0);
}

TEST(Norm, CosOracleDense) {
  const auto trivial = Bicharacter::trivial(kZ2);
  for (int w : {1, 2, 5, 10}) {
    const auto est = estimate_norm(cos_element(), trivial, Window{w});
    EXPECT_EQ(est.method, NormMethod::Dense);
    EXPECT_NEAR(est.value, path_oracle(w), 1e-10);
  }
}

TEST(Norm, CosOraclePowerIteration) {
  const auto est = estimate_norm(cos_element(), Bicharacter::trivial(kZ2), Window{64});
  EXPECT_EQ(est.method, NormMethod::PowerIteration);
  EXPECT_NEAR(est.value, path_oracle(64), 1e-5);
  EXPECT_NEAR(est.value, 2.0, 1e-3);
  EXPECT_LE(est.value, 2.0);
}

TEST(Norm, PowerIterationAgreesWithDense) {
  Rng rng(83);
  NormOptions sparse;
  sparse.dense_limit = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto sigma = random_skew_cocycle(kZ2, rng);
    const auto a = random_element(kZ2, rng, 4, 2);
    const double dense = estimate_norm(a, sigma, Window{6}).value;
    const double power = estimate_norm(a, sigma, Window{6}, sparse).value;
    EXPECT_NEAR(power, dense, 1e-4 * std::max(1.0, dense));
    EXPECT_LE(power, dense + 1e-12);
  }
}

TEST(Norm, ConvergenceIsMonotone) {
  const std::vector<int> windows = {2, 4, 8, 16, 24, 32, 64};
  const auto rows = norm_convergence(cos_element(), Bicharacter::trivial(kZ2), windows);
  ASSERT_EQ(rows.size(), windows.size());
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i].estimate, rows[i - 1].estimate);
  EXPECT_NEAR(rows.back().estimate, 2.0, 1e-3);
  Rng rng(84);
  const auto sigma = Bicharacter::from_form(kZ2, SkewForm::standard_symplectic(2), std::numbers::sqrt2 - 1.0);
  const auto a = random_element(kZ2, rng, 5, 2);
  const std::vector<int> nc = {2, 4, 8, 12};
  const auto nc_rows = norm_convergence(a, sigma, nc);
  for (std::size_t i = 1; i < nc_rows.size(); ++i) EXPECT_GE(nc_rows[i].estimate, nc_rows[i - 1].estimate - 1e-12);
  EXPECT_THROW(norm_convergence(a, sigma, std::vector<int>{4, 4}), ValidationError);
}

TEST(Norm, BoundedByL1) {
  Rng rng(85);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sigma = random_lattice_cocycle(kZ2, rng);
    const auto a = random_element(kZ2, rng, 6, 2);
    EXPECT_LE(op_norm_estimate(a, sigma, Window{5}), a.l1_norm() + 1e-12);
  }
}

TEST(Norm, AdjointHasSameNorm) {
  Rng rng(87);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sigma = random_skew_cocycle(kZ2, rng);
    const auto a = random_element(kZ2, rng, 6, 2);
    EXPECT_NEAR(op_norm_estimate(involution(a, sigma), sigma, Window{6}), op_norm_estimate(a, sigma, Window{6}),
                1e-10);
  }
}

TEST(Norm, TranslationInvariant) {
  Rng rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sigma = random_lattice_cocycle(kZ2, rng);
    const auto a = random_element(kZ2, rng, 6, 2);
    const auto t = random_torus_point(2, rng);
    EXPECT_NEAR(op_norm_estimate(translate(a, t), sigma, Window{6}), op_norm_estimate(a, sigma, Window{6}), 1e-10);
  }
}

TEST(Norm, ContinuityScan) {
  const auto a = cos_element();
  const auto b = FourierElement::delta(kZ2, GroupPoint{0, 1}) + FourierElement::delta(kZ2, GroupPoint{0, -1});
  const std::vector<double> hbars = {0.3, 0.0, 0.1, 0.2};
  const auto scan = field_continuity_scan(a, b, SkewForm::standard_symplectic(2), hbars, Window{6});
  ASSERT_EQ(scan.rows.size(), 4u);
  EXPECT_EQ(scan.rows.front().hbar, 0.0);
  EXPECT_TRUE(std::isfinite(scan.max_slope));
  EXPECT_LT(scan.max_slope, 100.0);
}

TEST(Norm, RejectsFiniteContext) {
  const auto z5 = GroupContext::finite({5, 5});
  EXPECT_THROW(op_norm_estimate(FourierElement::delta(z5, GroupPoint{1, 0}), Bicharacter::trivial(z5), Window{2}),
               ValidationError);
}
