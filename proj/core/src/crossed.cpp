#include "nctorus/crossed.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SVD>

#include "nctorus/deform.hpp"
#include "nctorus/errors.hpp"

namespace nctorus {
namespace {

void require_finite(const GroupContext& ctx, const char* what) {
  if (!ctx.is_finite()) throw ValidationError(std::string(what) + ": finite context required");
}

void require_same(const GroupContext& a, const GroupContext& b, const char* what) {
  if (!(a == b)) throw ContextMismatch(std::string(what) + ": operands live on different contexts");
}

bool is_symmetric(const Bicharacter& e) { return e.int_matrix() == e.int_matrix().transpose(); }

}  // namespace

CrossedElement::CrossedElement(GroupContext ctx) : ctx_(std::move(ctx)) {
  require_finite(ctx_, "crossed element");
  fibers_.assign(ctx_.order(), FiniteVector(ctx_));
}

CrossedElement::CrossedElement(GroupContext ctx, std::vector<FiniteVector> fibers)
    : ctx_(std::move(ctx)), fibers_(std::move(fibers)) {
  require_finite(ctx_, "crossed element");
  if (fibers_.size() != ctx_.order()) {
    throw ValidationError("crossed element: expected " + std::to_string(ctx_.order()) + " fibers, got " +
                          std::to_string(fibers_.size()));
  }
  for (const auto& f : fibers_) require_same(ctx_, f.context(), "crossed element fiber");
}

CrossedElement CrossedElement::lambda(const GroupContext& ctx, const GroupPoint& v) {
  return concentrated(ctx, v, FiniteVector::constant(ctx, 1.0));
}

CrossedElement CrossedElement::concentrated(const GroupContext& ctx, const GroupPoint& v, FiniteVector fiber) {
  CrossedElement a(ctx);
  require_same(ctx, fiber.context(), "crossed element fiber");
  a.fibers_[ctx.index_of(v)] = std::move(fiber);
  return a;
}

CrossedElement& CrossedElement::operator+=(const CrossedElement& other) {
  require_same(ctx_, other.ctx_, "crossed element sum");
  for (std::size_t i = 0; i < fibers_.size(); ++i) fibers_[i] += other.fibers_[i];
  return *this;
}

CrossedElement& CrossedElement::operator-=(const CrossedElement& other) {
  require_same(ctx_, other.ctx_, "crossed element difference");
  for (std::size_t i = 0; i < fibers_.size(); ++i) fibers_[i] -= other.fibers_[i];
  return *this;
}

CrossedElement& CrossedElement::operator*=(Complex s) {
  for (auto& f : fibers_) f *= s;
  return *this;
}

double CrossedElement::max_abs() const {
  double m = 0.0;
  for (const auto& f : fibers_) m = std::max(m, f.max_abs());
  return m;
}

double max_abs_diff(const CrossedElement& a, const CrossedElement& b) { return (a - b).max_abs(); }

FiniteVector act(const GroupPoint& u, const FiniteVector& f) { return f.translated(u); }

CrossedElement crossed_conv(const CrossedElement& a, const CrossedElement& b) {
  const auto& ctx = a.context();
  require_same(ctx, b.context(), "crossed_conv");
  const auto pts = ctx.all_points();
  CrossedElement out(ctx);
  for (std::size_t u = 0; u < pts.size(); ++u) {
    if (a.fiber(u).max_abs() == 0.0) continue;
    for (std::size_t w = 0; w < pts.size(); ++w) {
      if (b.fiber(w).max_abs() == 0.0) continue;
      // (v - u) = w  =>  v = u + w
      out.fiber(ctx.index_of(ctx.add(pts[u], pts[w]))) += a.fiber(u).hadamard(act(pts[u], b.fiber(w)));
    }
  }
  return out;
}

CrossedElement dual_action(const GroupPoint& xi, const CrossedElement& a) {
  const auto& ctx = a.context();
  const auto x = ctx.point(xi.coords);
  CrossedElement out = a;
  for (std::size_t v = 0; v < out.size(); ++v) out.fiber(v) *= pairing(ctx, ctx.point_at(v), x);
  return out;
}

Bicharacter standard_pairing(const GroupContext& ctx) {
  require_finite(ctx, "standard_pairing");
  return Bicharacter::finite(ctx, IntMatrix::Identity(ctx.rank(), ctx.rank()));
}

DeformedActionData DeformedActionData::make(const Bicharacter& sigma, const Bicharacter& e) {
  require_finite(sigma.context(), "deformed action");
  auto [t, t_star] = T_map(sigma, e);
  return {sigma, e, std::move(t), std::move(t_star)};
}

DeformedActionData DeformedActionData::make(const Bicharacter& sigma) {
  return make(sigma, standard_pairing(sigma.context()));
}

CrossedElement deformed_dual_action(const DeformedActionData& data, const GroupPoint& xi, const CrossedElement& a) {
  const auto& ctx = a.context();
  require_same(ctx, data.sigma.context(), "deformed_dual_action");
  const auto x = ctx.point(xi.coords);
  const auto shift = ctx.negate(sigma_one(data.sigma).apply(ctx, x));
  CrossedElement out(ctx);
  for (std::size_t v = 0; v < a.size(); ++v) {
    out.fiber(v) = pairing(ctx, ctx.point_at(v), x) * act(shift, a.fiber(v));
  }
  return out;
}

CheckReport fixed_point_test(const CrossedElement& a, const DeformedActionData& data, double tolerance) {
  const auto& ctx = a.context();
  require_same(ctx, data.sigma.context(), "fixed_point_test");
  const auto pts = ctx.all_points();
  double worst = 0.0;
  for (const auto& u : pts) {
    const auto tu = data.t.apply(ctx, u);
    for (std::size_t v = 0; v < pts.size(); ++v) {
      const auto& f = a.fiber(v);
      worst = std::max(worst, max_abs_diff(act(tu, f), data.e(u, pts[v]) * f));
    }
  }
  return {worst <= tolerance, worst};
}

double invariance_deviation(const CrossedElement& a, const DeformedActionData& data) {
  double worst = 0.0;
  for (const auto& xi : a.context().all_points()) {
    worst = std::max(worst, max_abs_diff(deformed_dual_action(data, xi, a), a));
  }
  return worst;
}

CrossedElement spectral_project(const CrossedElement& a, const DeformedActionData& data) {
  const auto& ctx = a.context();
  require_same(ctx, data.sigma.context(), "spectral_project");
  const auto pts = ctx.all_points();
  const double weight = 1.0 / static_cast<double>(pts.size());
  std::vector<GroupPoint> tu;
  tu.reserve(pts.size());
  for (const auto& u : pts) tu.push_back(data.t.apply(ctx, u));
  CrossedElement out(ctx);
  for (std::size_t v = 0; v < pts.size(); ++v) {
    const auto& f = a.fiber(v);
    if (f.max_abs() == 0.0) continue;
    FiniteVector acc(ctx);
    for (std::size_t u = 0; u < pts.size(); ++u) acc += std::conj(data.e(pts[u], pts[v])) * act(tu[u], f);
    out.fiber(v) = weight * acc;
  }
  return out;
}

std::size_t fixed_point_dimension(const DeformedActionData& data) {
  // Projector singular values are 0 or 1 up to roundoff.
  constexpr double kRankCutoff = 0.5;
  const auto& ctx = data.sigma.context();
  const auto pts = ctx.all_points();
  const auto n = static_cast<Eigen::Index>(pts.size());
  std::size_t total = 0;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    Eigen::MatrixXcd proj(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto basis = CrossedElement::concentrated(ctx, pts[v], FiniteVector::delta(ctx, pts[col]));
      const CrossedElement projected = spectral_project(basis, data);
      const FiniteVector& image = projected.fiber(v);
      for (Eigen::Index row = 0; row < n; ++row) proj(row, col) = image[row];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(proj);
    total += static_cast<std::size_t>((svd.singularValues().array() > kRankCutoff).count());
  }
  return total;
}

FiniteVector I_map(const CrossedElement& a) {
  FiniteVector out(a.context());
  for (const auto& f : a.fibers()) out += f;
  return out;
}

double verify_I_homomorphism(const CrossedElement& a, const CrossedElement& b, const DeformedActionData& data) {
  require_same(a.context(), b.context(), "verify_I_homomorphism");
  if (!data.t.is_invertible()) throw PreconditionError("verify_I_homomorphism: T is singular");
  if (!is_symmetric(data.e)) throw PreconditionError("verify_I_homomorphism: e must be symmetric");
  if (!fixed_point_test(a, data).passed) throw PreconditionError("verify_I_homomorphism: first operand is not a fixed point");
  if (!fixed_point_test(b, data).passed) throw PreconditionError("verify_I_homomorphism: second operand is not a fixed point");
  const FiniteVector lhs = I_map(crossed_conv(a, b));
  const FiniteVector rhs = rieffel_product_finite(I_map(a), I_map(b), data.e, data.t);
  return max_abs_diff(lhs, rhs);
}

CrossedElement twisted_crossed_dual(const CrossedElement& a, const CrossedElement& b, const Bicharacter& dual_sigma) {
  const auto& ctx = a.context();
  require_same(ctx, b.context(), "twisted_crossed_dual");
  require_same(ctx, dual_sigma.context(), "twisted_crossed_dual");
  const auto pts = ctx.all_points();
  CrossedElement out(ctx);
  for (std::size_t u = 0; u < pts.size(); ++u) {
    if (a.fiber(u).max_abs() == 0.0) continue;
    for (std::size_t w = 0; w < pts.size(); ++w) {
      if (b.fiber(w).max_abs() == 0.0) continue;
      const auto v = ctx.add(pts[u], pts[w]);
      const Complex phase = dual_sigma(ctx.sub(pts[u], v), pts[u]);
      out.fiber(ctx.index_of(v)) += phase * a.fiber(u).hadamard(act(pts[u], b.fiber(w)));
    }
  }
  return out;
}

}  // namespace nctorus
