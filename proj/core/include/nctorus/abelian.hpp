#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace nctorus {

using Complex = std::complex<double>;

/// Point of Z^n or of (Z/N_1) x ... x (Z/N_n). Reduction is the context's job;
/// a bare GroupPoint is just a coordinate vector.
struct GroupPoint {
  std::vector<std::int64_t> coords;

  GroupPoint() = default;
  explicit GroupPoint(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  GroupPoint(std::initializer_list<std::int64_t> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
  friend auto operator<=>(const GroupPoint&, const GroupPoint&) = default;
};

/// exp(2 pi i turns), exact at multiples of a quarter turn.
Complex unit_phase(double turns);

enum class GroupMode { Lattice, Finite };

/// Either the lattice Z^n (dual to the torus T^n) or a finite abelian group
/// (Z/N_1) x ... x (Z/N_n), identified with its own dual through
/// pairing(u, xi) = exp(2 pi i sum_j u_j xi_j / N_j).
class GroupContext {
 public:
  static GroupContext lattice(int rank);
  static GroupContext finite(std::vector<std::int64_t> moduli);

  int rank() const { return rank_; }
  GroupMode mode() const { return mode_; }
  bool is_finite() const { return mode_ == GroupMode::Finite; }
  bool is_lattice() const { return mode_ == GroupMode::Lattice; }

  /// Empty in lattice mode.
  std::span<const std::int64_t> moduli() const { return moduli_; }

  /// True when every modulus is the same N; finite-mode linear maps need it.
  bool uniform_modulus() const;
  std::int64_t modulus() const;

  /// |V|. Finite mode only.
  std::size_t order() const;

  /// |V|^{-1/2}: the Haar weight that makes `fourier` unitary.
  double norm_const() const;

  /// Validates length and reduces into [0, N_j) in finite mode.
  GroupPoint point(std::vector<std::int64_t> coords) const;
  GroupPoint zero() const;
  GroupPoint add(const GroupPoint& p, const GroupPoint& q) const;
  GroupPoint sub(const GroupPoint& p, const GroupPoint& q) const;
  GroupPoint negate(const GroupPoint& p) const;
  bool contains(const GroupPoint& p) const;

  /// Row-major enumeration of a finite group; inverse of `point_at`.
  std::size_t index_of(const GroupPoint& p) const;
  GroupPoint point_at(std::size_t index) const;
  std::vector<GroupPoint> all_points() const;

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  GroupContext(int rank, GroupMode mode, std::vector<std::int64_t> moduli);
  void require_finite(const char* what) const;

  int rank_ = 1;
  GroupMode mode_ = GroupMode::Lattice;
  std::vector<std::int64_t> moduli_;
};

/// Character pairing on a finite context, as a phase in turns in [0, 1).
double pairing_turns(const GroupContext& ctx, const GroupPoint& u, const GroupPoint& xi);

/// e(u, xi) on a finite context.
Complex pairing(const GroupContext& ctx, const GroupPoint& u, const GroupPoint& xi);

/// Lattice/torus duality: exp(2 pi i p . t) for p in Z^n and t in [0,1)^n.
Complex pairing(const GroupContext& ctx, const GroupPoint& p, std::span<const double> t);

/// Complex function on the points of a finite context.
class FiniteVector {
 public:
  explicit FiniteVector(GroupContext ctx);
  FiniteVector(GroupContext ctx, std::vector<Complex> values);

  static FiniteVector delta(const GroupContext& ctx, const GroupPoint& at, Complex value = 1.0);
  static FiniteVector constant(const GroupContext& ctx, Complex value);

  const GroupContext& context() const { return ctx_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  Complex at(const GroupPoint& p) const { return values_[ctx_.index_of(p)]; }
  Complex& at(const GroupPoint& p) { return values_[ctx_.index_of(p)]; }

  FiniteVector& operator+=(const FiniteVector& other);
  FiniteVector& operator-=(const FiniteVector& other);
  FiniteVector& operator*=(Complex s);
  friend FiniteVector operator+(FiniteVector a, const FiniteVector& b) { return a += b; }
  friend FiniteVector operator-(FiniteVector a, const FiniteVector& b) { return a -= b; }
  friend FiniteVector operator*(Complex s, FiniteVector a) { return a *= s; }

  /// Pointwise product.
  FiniteVector hadamard(const FiniteVector& other) const;
  /// g(v) = f(v + w).
  FiniteVector translated(const GroupPoint& w) const;

  double l2_norm() const;
  double max_abs() const;

 private:
  GroupContext ctx_;
  std::vector<Complex> values_;
};

double max_abs_diff(const FiniteVector& a, const FiniteVector& b);

/// f^(v) = |V|^{-1/2} sum_xi pairing(v, xi) f(xi).
FiniteVector fourier(const FiniteVector& f);
FiniteVector inverse_fourier(const FiniteVector& f);

}  // namespace nctorus
