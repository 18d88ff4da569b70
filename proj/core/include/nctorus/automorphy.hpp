#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nctorus/abelian.hpp"
#include "nctorus/cocycles.hpp"

namespace nctorus {

/// Finite group given by its multiplication table: mul[a][b] = index of ab.
class GroupTable {
 public:
  explicit GroupTable(std::vector<std::vector<std::size_t>> mul);
  static GroupTable cyclic(std::size_t n);

  std::size_t order() const { return mul_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return mul_; }

 private:
  std::vector<std::vector<std::size_t>> mul_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// Left action of a finite group on {0, ..., |X| - 1}: act[k][x] = k.x.
class GammaAction {
 public:
  GammaAction(GroupTable group, std::vector<std::vector<std::size_t>> act);
  static GammaAction trivial(GroupTable group, std::size_t points);

  const GroupTable& group() const { return group_; }
  std::size_t group_order() const { return group_.order(); }
  std::size_t points() const { return points_; }
  std::size_t apply(std::size_t k, std::size_t x) const { return act_[k][x]; }
  const std::vector<std::vector<std::size_t>>& table() const { return act_; }

 private:
  GroupTable group_;
  std::vector<std::vector<std::size_t>> act_;
  std::size_t points_ = 0;
};

/// tau(k1, k2, x), stored as values[(k1 * |G| + k2) * |X| + x].
class TauCocycle {
 public:
  TauCocycle(const GammaAction& act, std::vector<Complex> values);
  static TauCocycle trivial(const GammaAction& act);

  Complex operator()(std::size_t k1, std::size_t k2, std::size_t x) const {
    return values_[(k1 * group_ + k2) * points_ + x];
  }
  Complex& at(std::size_t k1, std::size_t k2, std::size_t x) { return values_[(k1 * group_ + k2) * points_ + x]; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t group_order() const { return group_; }
  std::size_t points() const { return points_; }

 private:
  std::size_t group_;
  std::size_t points_;
  std::vector<Complex> values_;
};

/// j(k, x), stored as values[k * |X| + x].
class AutomorphyFactor {
 public:
  AutomorphyFactor(const GammaAction& act, std::vector<Complex> values);
  static AutomorphyFactor trivial(const GammaAction& act);

  Complex operator()(std::size_t k, std::size_t x) const { return values_[k * points_ + x]; }
  Complex& at(std::size_t k, std::size_t x) { return values_[k * points_ + x]; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t group_order() const { return group_; }
  std::size_t points() const { return points_; }

 private:
  std::size_t group_;
  std::size_t points_;
  std::vector<Complex> values_;
};

inline constexpr double kAutomorphyTolerance = 1e-12;

/// tau(k1 k2, k3, x) tau(k1, k2, k3 x) == tau(k1, k2 k3, x) tau(k2, k3, x), exhaustively.
CheckReport tau_cocycle_check(const GammaAction& act, const TauCocycle& tau, double tolerance = kAutomorphyTolerance);

/// j(k1, k2 x) j(k2, x) == tau(k1, k2, x) j(k1 k2, x), exhaustively.
CheckReport automorphy_check(const GammaAction& act, const TauCocycle& tau, const AutomorphyFactor& j,
                             double tolerance = kAutomorphyTolerance);

/// tau(k1, k2, x) = j(k1, k2 x) j(k2, x) / j(k1 k2, x).
TauCocycle coboundary(const GammaAction& act, const AutomorphyFactor& j);

struct AutomorphySolution {
  std::int64_t modulus = 1;
  /// Exponents s with j = exp(2 pi i s / modulus); empty when unsolvable.
  std::optional<std::vector<std::int64_t>> exponents;
  std::optional<AutomorphyFactor> factor;

  bool solvable() const { return factor.has_value(); }
};

/// Exponent table t with tau = exp(2 pi i t / m). ValidationError when some
/// value is not an m-th root of unity.
std::vector<std::int64_t> tau_exponents(const TauCocycle& tau, std::int64_t m);

/// Solves s(k1, k2 x) + s(k2, x) - s(k1 k2, x) = t(k1, k2, x) over Z/m by
/// diagonalising the system with unimodular row and column operations.
/// PreconditionError when tau is not a cocycle.
AutomorphySolution solve_automorphy(const GammaAction& act, const TauCocycle& tau, std::int64_t m);

/// U(k)(x) = j(k, k^{-1} x), stored like AutomorphyFactor.
AutomorphyFactor u_transform(const GammaAction& act, const AutomorphyFactor& j);

/// U(k1)(x) U(k2)(k1^{-1} x) == tau(k1, k2, (k1 k2)^{-1} x) U(k1 k2)(x).
CheckReport u_cocycle_check(const GammaAction& act, const TauCocycle& tau, const AutomorphyFactor& u,
                            double tolerance = kAutomorphyTolerance);

namespace modular {

struct Diagonalisation {
  std::vector<std::int64_t> diagonal;              // d_i, length min(rows, cols)
  std::vector<std::vector<std::int64_t>> column;   // V, cols x cols
  std::vector<std::int64_t> rhs;                   // U b
};

/// U A V = D over Z/m with U, V invertible; rhs is transformed alongside.
Diagonalisation diagonalise(std::vector<std::vector<std::int64_t>> a, std::vector<std::int64_t> b, std::int64_t m);

/// Some x with A x = b over Z/m, or nullopt.
std::optional<std::vector<std::int64_t>> solve_linear(const std::vector<std::vector<std::int64_t>>& a,
                                                      const std::vector<std::int64_t>& b, std::int64_t m);

}  // namespace modular

}  // namespace nctorus
