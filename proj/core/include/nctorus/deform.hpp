#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "nctorus/abelian.hpp"
#include "nctorus/cocycles.hpp"

namespace nctorus {

/// Convention constants for the lattice deformation.
///
/// The deformed cocycle is sigma_hbar(p, q) = exp(-pi i hbar p^T gamma q) and
/// the Fourier-side bracket is {a, b}(p) = -4 pi^2 sum a(p1) b(p2) gamma(p1, p2).
/// With those two normalisations the first-order term of
/// (a *_hbar b - ab) / (i hbar) equals kBracketScale * {a, b}; equivalently the
/// bracket's own hbar is 4 pi times this one. Every consumer reads the scale
/// from here.
inline constexpr double kBracketScale = 1.0 / (4.0 * std::numbers::pi);

/// Coefficients smaller than this after arithmetic are dropped.
inline constexpr double kDropThreshold = 1e-15;

/// Finitely supported function on a dual group (Z^n or a finite group),
/// stored without zero coefficients.
class FourierElement {
 public:
  using Coeffs = std::map<GroupPoint, Complex>;

  explicit FourierElement(GroupContext ctx);
  FourierElement(GroupContext ctx, Coeffs coeffs);

  static FourierElement delta(const GroupContext& ctx, const GroupPoint& p, Complex c = 1.0);

  const GroupContext& context() const { return ctx_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Complex coefficient(const GroupPoint& p) const;
  std::size_t support_size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  std::vector<GroupPoint> support() const;

  /// max_j |p_j| over the support (0 for the zero element). Lattice mode.
  std::int64_t support_radius() const;

  double l1_norm() const;

  FourierElement& operator+=(const FourierElement& other);
  FourierElement& operator-=(const FourierElement& other);
  FourierElement& operator*=(Complex s);
  friend FourierElement operator+(FourierElement a, const FourierElement& b) { return a += b; }
  friend FourierElement operator-(FourierElement a, const FourierElement& b) { return a -= b; }
  friend FourierElement operator*(Complex s, FourierElement a) { return a *= s; }

  friend bool operator==(const FourierElement&, const FourierElement&) = default;

 private:
  void canonicalize();

  GroupContext ctx_;
  Coeffs coeffs_;
};

double l1_distance(const FourierElement& a, const FourierElement& b);

/// (a * b)(p) = sum_{p1 + p2 = p} a(p1) b(p2) sigma(p1, p2).
FourierElement star(const FourierElement& a, const FourierElement& b, const Bicharacter& sigma);

/// Undeformed product (ordinary convolution).
FourierElement convolve(const FourierElement& a, const FourierElement& b);

/// a*(p) = sigma(p, p) conj(a(-p)).
FourierElement involution(const FourierElement& a, const Bicharacter& sigma);

/// {a, b}(p) = -4 pi^2 sum_{p1 + p2 = p} a(p1) b(p2) gamma(p1, p2). Lattice mode.
FourierElement poisson_bracket(const FourierElement& a, const FourierElement& b, const SkewForm& gamma);

/// || (a *_hbar b - ab) / (i hbar) - scale {a, b} || with the windowed operator
/// norm of the hbar-deformed algebra. hbar must be nonzero.
double semiclassical_defect(const FourierElement& a, const FourierElement& b, const SkewForm& gamma,
                            double hbar, int window, double scale = kBracketScale);

/// Deform by sigma_1, then deform the result by sigma_2, using the structure
/// constants of the first product as the multiplication table for the second.
FourierElement iterated_star(const FourierElement& a, const FourierElement& b,
                             const Bicharacter& sigma1, const Bicharacter& sigma2);

/// l1 distance between iterated_star and star under compose_cocycles(sigma1, sigma2).
double iterated_star_check(const FourierElement& a, const FourierElement& b,
                           const Bicharacter& sigma1, const Bicharacter& sigma2);

/// Fourier side of translation: coefficient at p multiplied by pairing(p, v).
FourierElement translate(const FourierElement& a, std::span<const double> torus_point);
FourierElement translate(const FourierElement& a, const GroupPoint& v);

/// l1 distance between translate(a) * translate(b) and translate(a * b).
double automorphism_check(const FourierElement& a, const FourierElement& b, const Bicharacter& sigma,
                          std::span<const double> torus_point);
double automorphism_check(const FourierElement& a, const FourierElement& b, const Bicharacter& sigma,
                          const GroupPoint& v);

/// Dense view of a finite-mode element.
FiniteVector to_finite_vector(const FourierElement& a);
FourierElement from_finite_vector(const FiniteVector& f);

/// Rieffel product on functions over a finite V with V acting by translation:
///   (a * b)(v) = |V|^{-1} sum_{u,w} e(u, w) a(v - T u) b(v + w).
/// Whenever T* = -T (antisymmetric sigma, symmetric e) the shift -T u is the
/// adjoint shift T* u. Requires e nondegenerate.
FiniteVector rieffel_product_finite(const FiniteVector& a, const FiniteVector& b, const Bicharacter& e,
                                    const LinearMap& t);

/// The T for which the Rieffel product is the Fourier image of star(., ., sigma):
///   fourier(star(f, g, sigma)) == |V|^{1/2} rieffel_product_finite(fourier f, fourier g, e, T)
/// for symmetric nondegenerate e. It is T_map of the transposed cocycle.
LinearMap rieffel_dual_map(const Bicharacter& sigma, const Bicharacter& e);

}  // namespace nctorus
