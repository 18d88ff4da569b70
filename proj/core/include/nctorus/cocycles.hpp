#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/abelian.hpp"

namespace nctorus {

using RealMatrix = Eigen::MatrixXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Real skew-symmetric form gamma on Z^n, gamma(p, q) = p^T gamma q.
class SkewForm {
 public:
  /// Throws ValidationError unless the matrix is square with m^T == -m exactly.
  explicit SkewForm(RealMatrix m);

  static SkewForm zero(int n);
  /// [[0, I], [-I, 0]] in dimension 2n; for n = 1 this is [[0, 1], [-1, 0]].
  static SkewForm standard_symplectic(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const RealMatrix& matrix() const { return m_; }
  double operator()(const GroupPoint& p, const GroupPoint& q) const;

  SkewForm scaled(double s) const { return SkewForm(RealMatrix(s * m_)); }
  friend SkewForm operator+(const SkewForm& a, const SkewForm& b);

 private:
  RealMatrix m_;
};

/// Bicharacter on a dual group in exponent form.
///   lattice: sigma(p, q) = exp(-pi i hbar p^T A q)
///   finite:  sigma(xi, eta) = exp(2 pi i sum_ij B_ij xi_i eta_j / gcd(N_i, N_j))
/// Every 2-cocycle class on an abelian group has such a representative, so
/// this is the only cocycle representation the library carries.
class Bicharacter {
 public:
  static Bicharacter lattice(GroupContext ctx, RealMatrix a, double hbar);
  static Bicharacter from_form(const GroupContext& ctx, const SkewForm& form, double hbar);
  static Bicharacter finite(GroupContext ctx, IntMatrix b);
  static Bicharacter trivial(const GroupContext& ctx);

  const GroupContext& context() const { return ctx_; }
  bool is_lattice() const { return ctx_.is_lattice(); }

  /// Phase of sigma(xi, eta) in turns, reduced into [0, 1).
  double turns(const GroupPoint& xi, const GroupPoint& eta) const;
  Complex operator()(const GroupPoint& xi, const GroupPoint& eta) const;

  /// Lattice mode: A, hbar and the combined exponent hbar * A.
  const RealMatrix& matrix() const { return real_; }
  double hbar() const { return hbar_; }
  RealMatrix exponent() const { return hbar_ * real_; }

  /// Finite mode: B, each entry reduced modulo gcd(N_i, N_j).
  const IntMatrix& int_matrix() const { return int_; }

  Bicharacter conjugate() const;
  /// sigma^t(xi, eta) = sigma(eta, xi).
  Bicharacter transpose() const;
  bool is_trivial() const;

 private:
  Bicharacter(GroupContext ctx, RealMatrix a, double hbar, IntMatrix b);

  GroupContext ctx_;
  RealMatrix real_;
  double hbar_ = 0.0;
  IntMatrix int_;
};

/// Checked evaluation: both points must belong to sigma's context.
Complex eval(const Bicharacter& sigma, const GroupPoint& xi, const GroupPoint& eta);

using Triple = std::array<GroupPoint, 3>;
using CocycleFunction = std::function<Complex(const GroupPoint&, const GroupPoint&)>;

struct CheckReport {
  bool passed = false;
  double max_deviation = 0.0;
};

/// sigma(x, y) sigma(x + y, z) == sigma(x, y + z) sigma(y, z) on every triple.
CheckReport cocycle_check(const GroupContext& ctx, const CocycleFunction& sigma,
                          const std::vector<Triple>& triples, double tolerance = 1e-12);
CheckReport cocycle_check(const Bicharacter& sigma, const std::vector<Triple>& triples,
                          double tolerance = 1e-12);

/// Every (x, y, z) of a finite context.
std::vector<Triple> exhaustive_triples(const GroupContext& ctx);

/// Skew part (A - A^T)/2 of the exponent. Finite mode needs every modulus odd.
Bicharacter antisymmetrize(const Bicharacter& sigma);

/// Exponent matrices differ by a symmetric matrix.
bool cohomologous_check(const Bicharacter& a, const Bicharacter& b);

/// Exponent matrices add; the result is the pointwise product sigma_1 sigma_2.
Bicharacter compose_cocycles(const Bicharacter& a, const Bicharacter& b);

/// Linear map over R (lattice/vector model) or over Z/N (finite model).
class LinearMap {
 public:
  static LinearMap real(RealMatrix m);
  static LinearMap modular(IntMatrix m, std::int64_t modulus);

  bool is_modular() const { return modulus_.has_value(); }
  int dim() const;
  const RealMatrix& real_matrix() const { return real_; }
  const IntMatrix& int_matrix() const { return int_; }
  std::int64_t modulus() const { return modulus_.value_or(0); }

  /// (*this) o inner.
  LinearMap compose(const LinearMap& inner) const;
  LinearMap transpose() const;
  LinearMap negated() const;
  LinearMap inverse() const;
  bool is_invertible() const;
  bool is_zero() const;

  GroupPoint apply(const GroupContext& ctx, const GroupPoint& p) const;

  /// Entrywise distance (mod N in modular mode, reported as 0 or 1 per entry).
  double distance(const LinearMap& other) const;

 private:
  RealMatrix real_;
  IntMatrix int_;
  std::optional<std::int64_t> modulus_;
};

/// xi -> sigma^1_xi, the point of V representing the character sigma(xi, .).
LinearMap sigma_one(const Bicharacter& sigma);
bool is_nondegenerate(const Bicharacter& sigma);

struct AdjointPair {
  LinearMap t;       // T = sigma^1 o e^1
  LinearMap t_star;  // e(T* u, w) == e(u, T w)
};

/// Throws PreconditionError when e is degenerate.
AdjointPair T_map(const Bicharacter& sigma, const Bicharacter& e);

/// max |e(T* u, w) - e(u, T w)| over all pairs of a finite context.
double adjoint_deviation(const Bicharacter& e, const AdjointPair& maps);

/// max |sigma(e^1_u, e^1_v) - e(T u, v)| over all pairs of a finite context.
double bicharacter_relation_deviation(const Bicharacter& sigma, const Bicharacter& e,
                                      const LinearMap& t);

namespace modular {
std::int64_t reduce(std::int64_t x, std::int64_t n);
std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t n);
/// Inverse of a mod n, or nullopt when gcd(a, n) != 1.
std::optional<std::int64_t> inverse(std::int64_t a, std::int64_t n);
std::int64_t determinant(const IntMatrix& m, std::int64_t n);
}  // namespace modular

}  // namespace nctorus
