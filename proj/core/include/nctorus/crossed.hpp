#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nctorus/abelian.hpp"
#include "nctorus/cocycles.hpp"

// Finite model of the crossed product B = A x V.
//
// V is a finite group (Z/N)^n identified with its dual through the standard
// pairing. A is the commutative algebra of functions on V^ with pointwise
// product, and u in V acts on A by translation, alpha_u[f](x) = f(x + u).
// An element of B is a table v -> a(v) in A with product
//   (a * b)(v) = sum_u a(u) alpha_u[b(v - u)].

namespace nctorus {

class CrossedElement {
 public:
  explicit CrossedElement(GroupContext ctx);
  CrossedElement(GroupContext ctx, std::vector<FiniteVector> fibers);

  /// The unitary lambda_v: supported at v with the unit function as fiber.
  static CrossedElement lambda(const GroupContext& ctx, const GroupPoint& v);
  static CrossedElement concentrated(const GroupContext& ctx, const GroupPoint& v, FiniteVector fiber);

  const GroupContext& context() const { return ctx_; }
  std::size_t size() const { return fibers_.size(); }
  const FiniteVector& fiber(std::size_t v) const { return fibers_[v]; }
  FiniteVector& fiber(std::size_t v) { return fibers_[v]; }
  const FiniteVector& fiber(const GroupPoint& v) const { return fibers_[ctx_.index_of(v)]; }
  std::span<const FiniteVector> fibers() const { return fibers_; }

  CrossedElement& operator+=(const CrossedElement& other);
  CrossedElement& operator-=(const CrossedElement& other);
  CrossedElement& operator*=(Complex s);
  friend CrossedElement operator+(CrossedElement a, const CrossedElement& b) { return a += b; }
  friend CrossedElement operator-(CrossedElement a, const CrossedElement& b) { return a -= b; }
  friend CrossedElement operator*(Complex s, CrossedElement a) { return a *= s; }

  double max_abs() const;

 private:
  GroupContext ctx_;
  std::vector<FiniteVector> fibers_;
};

double max_abs_diff(const CrossedElement& a, const CrossedElement& b);

/// alpha_u on A: translation of functions on V^ by u.
FiniteVector act(const GroupPoint& u, const FiniteVector& f);

CrossedElement crossed_conv(const CrossedElement& a, const CrossedElement& b);

/// alpha^_xi[a](v) = pairing(v, xi) a(v).
CrossedElement dual_action(const GroupPoint& xi, const CrossedElement& a);

/// Cocycle sigma on V^, nondegenerate e on V and T = sigma^1 o e^1.
struct DeformedActionData {
  Bicharacter sigma;
  Bicharacter e;
  LinearMap t;
  LinearMap t_star;

  /// Throws PreconditionError when e is degenerate.
  static DeformedActionData make(const Bicharacter& sigma, const Bicharacter& e);
  /// e = the standard pairing of the context.
  static DeformedActionData make(const Bicharacter& sigma);
};

/// The standard pairing as a bicharacter (identity exponent matrix).
Bicharacter standard_pairing(const GroupContext& ctx);

/// alpha^sigma_xi[a](v) = pairing(v, xi) alpha_{sigma^1 xi}^{-1}[a(v)].
CrossedElement deformed_dual_action(const DeformedActionData& data, const GroupPoint& xi, const CrossedElement& a);

/// alpha_{Tu}[a(v)] == e(u, v) a(v) for all u, v.
CheckReport fixed_point_test(const CrossedElement& a, const DeformedActionData& data, double tolerance = 1e-10);

/// max over xi of |alpha^sigma_xi[a] - a|; zero exactly on the fixed-point algebra.
double invariance_deviation(const CrossedElement& a, const DeformedActionData& data);

/// Fiberwise character average: a(v) -> |V|^{-1} sum_u conj(e(u, v)) alpha_{Tu}[a(v)].
CrossedElement spectral_project(const CrossedElement& a, const DeformedActionData& data);

/// Rank of spectral_project, computed fiber by fiber.
std::size_t fixed_point_dimension(const DeformedActionData& data);

/// I(a) = sum_v a(v).
FiniteVector I_map(const CrossedElement& a);

/// max |I(a * b) - I(a) * I(b)| with the Rieffel product for (e, T).
/// Needs T invertible, e symmetric and both inputs in the fixed-point algebra.
double verify_I_homomorphism(const CrossedElement& a, const CrossedElement& b, const DeformedActionData& data);

/// (a *_s b)(v) = sum_u s(u - v, u) a(u) alpha_u[b(v - u)].
CrossedElement twisted_crossed_dual(const CrossedElement& a, const CrossedElement& b, const Bicharacter& dual_sigma);

}  // namespace nctorus
