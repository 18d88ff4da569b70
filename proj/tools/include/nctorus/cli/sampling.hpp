#pragma once

// Seeded random generators shared by the acceptance suite and the tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "nctorus/abelian.hpp"
#include "nctorus/cocycles.hpp"
#include "nctorus/crossed.hpp"
#include "nctorus/deform.hpp"
#include "nctorus/paramdeform.hpp"

namespace nctorus::sampling {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Uniform in the closed unit disc.
inline Complex unit_disc(Rng& rng) {
  const double r = std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

inline Complex unit_circle(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi)); }

inline GroupPoint random_point(const GroupContext& ctx, Rng& rng, std::int64_t radius = 4) {
  std::vector<std::int64_t> c(ctx.rank());
  for (int i = 0; i < ctx.rank(); ++i) {
    c[i] = ctx.is_finite() ? uniform_int(rng, 0, ctx.moduli()[i] - 1) : uniform_int(rng, -radius, radius);
  }
  return ctx.point(std::move(c));
}

inline FourierElement random_element(const GroupContext& ctx, Rng& rng, std::size_t max_support = 9,
                                     std::int64_t radius = 4) {
  FourierElement::Coeffs coeffs;
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_support)));
  for (std::size_t i = 0; i < n; ++i) coeffs[random_point(ctx, rng, radius)] = unit_disc(rng);
  return FourierElement(ctx, std::move(coeffs));
}

inline FiniteVector random_vector(const GroupContext& ctx, Rng& rng) {
  std::vector<Complex> v(ctx.order());
  for (auto& z : v) z = unit_disc(rng);
  return FiniteVector(ctx, std::move(v));
}

inline CrossedElement random_crossed(const GroupContext& ctx, Rng& rng) {
  std::vector<FiniteVector> fibers;
  for (std::size_t i = 0; i < ctx.order(); ++i) fibers.push_back(random_vector(ctx, rng));
  return CrossedElement(ctx, std::move(fibers));
}

inline std::vector<double> random_torus_point(int rank, Rng& rng) {
  std::vector<double> t(rank);
  for (auto& x : t) x = uniform(rng, 0.0, 1.0);
  return t;
}

inline SkewForm random_skew(int n, Rng& rng, double scale = 1.0) {
  RealMatrix m = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = uniform(rng, -scale, scale);
      m(j, i) = -m(i, j);
    }
  }
  return SkewForm(std::move(m));
}

inline RealMatrix random_real_matrix(int n, Rng& rng, double scale = 1.0) {
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -scale, scale);
  }
  return m;
}

/// Antisymmetric lattice cocycle with random form and hbar.
inline Bicharacter random_skew_cocycle(const GroupContext& ctx, Rng& rng) {
  return Bicharacter::from_form(ctx, random_skew(ctx.rank(), rng), uniform(rng, -1.0, 1.0));
}

/// Any bilinear exponent, symmetric part included.
inline Bicharacter random_lattice_cocycle(const GroupContext& ctx, Rng& rng) {
  return Bicharacter::lattice(ctx, random_real_matrix(ctx.rank(), rng), uniform(rng, -1.0, 1.0));
}

inline IntMatrix random_int_matrix(int n, Rng& rng, std::int64_t modulus) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = uniform_int(rng, 0, modulus - 1);
  }
  return m;
}

inline Bicharacter random_finite_cocycle(const GroupContext& ctx, Rng& rng) {
  return Bicharacter::finite(ctx, random_int_matrix(ctx.rank(), rng, ctx.modulus()));
}

inline ParamElement random_param(const BaseGrid& grid, const GroupContext& ctx, Rng& rng) {
  std::vector<FourierElement> fibers;
  for (std::size_t i = 0; i < grid.size(); ++i) fibers.push_back(random_element(ctx, rng, 6, 3));
  return ParamElement(grid, std::move(fibers));
}

inline CocycleField random_field(const BaseGrid& grid, int n, Rng& rng) {
  std::vector<SkewForm> forms;
  for (std::size_t i = 0; i < grid.size(); ++i) forms.push_back(random_skew(n, rng));
  return CocycleField(grid, std::move(forms), uniform(rng, -1.0, 1.0));
}

/// Five lattice cocycles on Z^2: trivial, symplectic, triangular, generic, irrational skew.
inline std::vector<Bicharacter> cocycle_battery(const GroupContext& z2) {
  RealMatrix tri(2, 2);
  tri << 0.0, 1.0, 0.0, 0.0;
  RealMatrix generic(2, 2);
  generic << 0.3, -1.7, 0.45, 2.2;
  return {
      Bicharacter::trivial(z2),
      Bicharacter::from_form(z2, SkewForm::standard_symplectic(2), 0.37),
      Bicharacter::lattice(z2, tri, 0.5),
      Bicharacter::lattice(z2, generic, 1.0),
      Bicharacter::from_form(z2, SkewForm::standard_symplectic(2).scaled(std::numbers::sqrt2), 1.0),
  };
}

}  // namespace nctorus::sampling
