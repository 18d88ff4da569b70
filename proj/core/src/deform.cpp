#include "nctorus/deform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nctorus/errors.hpp"
#include "nctorus/norms.hpp"

namespace nctorus {
namespace {

void require_same(const GroupContext& a, const GroupContext& b, const char* what) {
  if (!(a == b)) throw ContextMismatch(std::string(what) + ": operands live on different contexts");
}

void require_bicharacter(const FourierElement& a, const Bicharacter& sigma, const char* what) {
  require_same(a.context(), sigma.context(), what);
}

}  // namespace

// --- FourierElement ---------------------------------------------------------

FourierElement::FourierElement(GroupContext ctx) : ctx_(std::move(ctx)) {}

FourierElement::FourierElement(GroupContext ctx, Coeffs coeffs) : ctx_(std::move(ctx)) {
  for (auto& [p, c] : coeffs) {
    if (p.size() != static_cast<std::size_t>(ctx_.rank())) {
      throw ValidationError("fourier element: support point of rank " + std::to_string(p.size()) +
                            " in a rank-" + std::to_string(ctx_.rank()) + " context");
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("fourier element: non-finite coefficient");
    }
    coeffs_[ctx_.point(p.coords)] += c;
  }
  canonicalize();
}

FourierElement FourierElement::delta(const GroupContext& ctx, const GroupPoint& p, Complex c) {
  return FourierElement(ctx, Coeffs{{p, c}});
}

void FourierElement::canonicalize() {
  std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) < kDropThreshold; });
}

Complex FourierElement::coefficient(const GroupPoint& p) const {
  auto it = coeffs_.find(ctx_.point(p.coords));
  return it == coeffs_.end() ? Complex{} : it->second;
}

std::vector<GroupPoint> FourierElement::support() const {
  std::vector<GroupPoint> out;
  out.reserve(coeffs_.size());
  for (const auto& [p, c] : coeffs_) out.push_back(p);
  return out;
}

std::int64_t FourierElement::support_radius() const {
  std::int64_t r = 0;
  for (const auto& [p, c] : coeffs_)
    for (auto x : p.coords) r = std::max(r, x < 0 ? -x : x);
  return r;
}

double FourierElement::l1_norm() const {
  double s = 0.0;
  for (const auto& [p, c] : coeffs_) s += std::abs(c);
  return s;
}

FourierElement& FourierElement::operator+=(const FourierElement& other) {
  require_same(ctx_, other.ctx_, "fourier element sum");
  for (const auto& [p, c] : other.coeffs_) coeffs_[p] += c;
  canonicalize();
  return *this;
}

FourierElement& FourierElement::operator-=(const FourierElement& other) {
  require_same(ctx_, other.ctx_, "fourier element difference");
  for (const auto& [p, c] : other.coeffs_) coeffs_[p] -= c;
  canonicalize();
  return *this;
}

FourierElement& FourierElement::operator*=(Complex s) {
  for (auto& [p, c] : coeffs_) c *= s;
  canonicalize();
  return *this;
}

double l1_distance(const FourierElement& a, const FourierElement& b) { return (a - b).l1_norm(); }

// --- products ---------------------------------------------------------------

FourierElement star(const FourierElement& a, const FourierElement& b, const Bicharacter& sigma) {
  require_same(a.context(), b.context(), "star");
  require_bicharacter(a, sigma, "star");
  const auto& ctx = a.context();
  FourierElement::Coeffs out;
  for (const auto& [p, x] : a.coeffs()) {
    for (const auto& [q, y] : b.coeffs()) out[ctx.add(p, q)] += x * y * sigma(p, q);
  }
  return FourierElement(ctx, std::move(out));
}

FourierElement convolve(const FourierElement& a, const FourierElement& b) {
  return star(a, b, Bicharacter::trivial(a.context()));
}

FourierElement involution(const FourierElement& a, const Bicharacter& sigma) {
  require_bicharacter(a, sigma, "involution");
  const auto& ctx = a.context();
  FourierElement::Coeffs out;
  for (const auto& [p, c] : a.coeffs()) {
    const auto q = ctx.negate(p);
    out[q] += sigma(q, q) * std::conj(c);
  }
  return FourierElement(ctx, std::move(out));
}

FourierElement poisson_bracket(const FourierElement& a, const FourierElement& b, const SkewForm& gamma) {
  require_same(a.context(), b.context(), "poisson_bracket");
  const auto& ctx = a.context();
  if (!ctx.is_lattice()) throw ValidationError("poisson_bracket: lattice context required");
  if (gamma.dim() != ctx.rank()) throw ValidationError("poisson_bracket: form dimension does not match rank");
  constexpr double prefactor = -4.0 * std::numbers::pi * std::numbers::pi;
  FourierElement::Coeffs out;
  for (const auto& [p, x] : a.coeffs()) {
    for (const auto& [q, y] : b.coeffs()) out[ctx.add(p, q)] += prefactor * x * y * gamma(p, q);
  }
  return FourierElement(ctx, std::move(out));
}

double semiclassical_defect(const FourierElement& a, const FourierElement& b, const SkewForm& gamma,
                            double hbar, int window, double scale) {
  if (hbar == 0.0) throw ValidationError("semiclassical_defect: hbar must be nonzero");
  const auto& ctx = a.context();
  if (!ctx.is_lattice()) throw ValidationError("semiclassical_defect: lattice context required");
  const Bicharacter sigma = Bicharacter::from_form(ctx, gamma, hbar);
  FourierElement diff = star(a, b, sigma) - convolve(a, b);
  diff *= Complex(0.0, -1.0 / hbar);  // 1 / (i hbar)
  diff -= scale * poisson_bracket(a, b, gamma);
  return op_norm_estimate(diff, sigma, Window{window});
}

FourierElement iterated_star(const FourierElement& a, const FourierElement& b,
                             const Bicharacter& sigma1, const Bicharacter& sigma2) {
  require_same(a.context(), b.context(), "iterated_star");
  require_bicharacter(a, sigma1, "iterated_star");
  require_bicharacter(a, sigma2, "iterated_star");
  const auto& ctx = a.context();
  FourierElement out(ctx);
  for (const auto& [p, x] : a.coeffs()) {
    for (const auto& [q, y] : b.coeffs()) {
      // The first deformation's product of two basis vectors, rescaled by the
      // second cocycle evaluated on the same pair of frequencies.
      FourierElement basis = star(FourierElement::delta(ctx, p), FourierElement::delta(ctx, q), sigma1);
      out += (x * y * sigma2(p, q)) * basis;
    }
  }
  return out;
}

double iterated_star_check(const FourierElement& a, const FourierElement& b,
                           const Bicharacter& sigma1, const Bicharacter& sigma2) {
  return l1_distance(iterated_star(a, b, sigma1, sigma2), star(a, b, compose_cocycles(sigma1, sigma2)));
}

FourierElement translate(const FourierElement& a, std::span<const double> torus_point) {
  FourierElement::Coeffs out;
  for (const auto& [p, c] : a.coeffs()) out[p] = c * pairing(a.context(), p, torus_point);
  return FourierElement(a.context(), std::move(out));
}

FourierElement translate(const FourierElement& a, const GroupPoint& v) {
  const auto& ctx = a.context();
  if (!ctx.is_finite()) throw ValidationError("translate: group-point shifts need a finite context");
  FourierElement::Coeffs out;
  for (const auto& [p, c] : a.coeffs()) out[p] = c * pairing(ctx, p, ctx.point(v.coords));
  return FourierElement(ctx, std::move(out));
}

double automorphism_check(const FourierElement& a, const FourierElement& b, const Bicharacter& sigma,
                          std::span<const double> torus_point) {
  return l1_distance(star(translate(a, torus_point), translate(b, torus_point), sigma),
                     translate(star(a, b, sigma), torus_point));
}

double automorphism_check(const FourierElement& a, const FourierElement& b, const Bicharacter& sigma,
                          const GroupPoint& v) {
  return l1_distance(star(translate(a, v), translate(b, v), sigma), translate(star(a, b, sigma), v));
}

FiniteVector to_finite_vector(const FourierElement& a) {
  FiniteVector f(a.context());
  for (const auto& [p, c] : a.coeffs()) f.at(p) = c;
  return f;
}

FourierElement from_finite_vector(const FiniteVector& f) {
  const auto& ctx = f.context();
  FourierElement::Coeffs out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != Complex{}) out[ctx.point_at(i)] = f[i];
  }
  return FourierElement(ctx, std::move(out));
}

// --- finite Rieffel product -------------------------------------------------

FiniteVector rieffel_product_finite(const FiniteVector& a, const FiniteVector& b, const Bicharacter& e,
                                    const LinearMap& t) {
  const auto& ctx = a.context();
  require_same(ctx, b.context(), "rieffel_product_finite");
  require_same(ctx, e.context(), "rieffel_product_finite");
  if (!is_nondegenerate(e)) throw PreconditionError("rieffel_product_finite: bicharacter e is degenerate");
  const std::size_t n = ctx.order();
  const auto pts = ctx.all_points();

  std::vector<std::size_t> shift(n);  // index of -T u
  for (std::size_t u = 0; u < n; ++u) shift[u] = ctx.index_of(ctx.negate(t.apply(ctx, pts[u])));

  std::vector<Complex> kernel(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = 0; w < n; ++w) kernel[u * n + w] = e(pts[u], pts[w]);

  std::vector<std::vector<std::size_t>> plus(n, std::vector<std::size_t>(n));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) plus[v][w] = ctx.index_of(ctx.add(pts[v], pts[w]));

  FiniteVector out(ctx);
  const double weight = 1.0 / static_cast<double>(n);
  for (std::size_t v = 0; v < n; ++v) {
    Complex acc{};
    for (std::size_t u = 0; u < n; ++u) {
      const Complex av = a[plus[v][shift[u]]];
      if (av == Complex{}) continue;
      Complex inner{};
      for (std::size_t w = 0; w < n; ++w) inner += kernel[u * n + w] * b[plus[v][w]];
      acc += av * inner;
    }
    out[v] = weight * acc;
  }
  return out;
}

LinearMap rieffel_dual_map(const Bicharacter& sigma, const Bicharacter& e) {
  return T_map(sigma.transpose(), e).t;
}

}  // namespace nctorus
