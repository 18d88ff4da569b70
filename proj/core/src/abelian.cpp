#include "nctorus/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nctorus/errors.hpp"

namespace nctorus {
namespace {

std::int64_t reduce(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

void check_rank(const GroupContext& ctx, const GroupPoint& p, const char* what) {
  if (p.size() != static_cast<std::size_t>(ctx.rank())) {
    throw ValidationError(std::string(what) + ": point has " + std::to_string(p.size()) +
                          " coordinates, context rank is " + std::to_string(ctx.rank()));
  }
}

void check_same(const GroupContext& a, const GroupContext& b) {
  if (!(a == b)) throw ContextMismatch("finite vectors live on different group contexts");
}

}  // namespace

Complex unit_phase(double turns) {
  double t = turns - std::floor(turns);
  double quarter = t * 4.0;
  if (quarter == std::floor(quarter)) {
    switch (static_cast<int>(quarter) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * t);
}

GroupContext::GroupContext(int rank, GroupMode mode, std::vector<std::int64_t> moduli)
    : rank_(rank), mode_(mode), moduli_(std::move(moduli)) {}

GroupContext GroupContext::lattice(int rank) {
  if (rank < 1) throw ValidationError("group context: rank must be >= 1");
  return GroupContext(rank, GroupMode::Lattice, {});
}

GroupContext GroupContext::finite(std::vector<std::int64_t> moduli) {
  if (moduli.empty()) throw ValidationError("group context: rank must be >= 1");
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    if (moduli[j] < 2) {
      throw ValidationError("group context: modulus " + std::to_string(j) + " is " +
                            std::to_string(moduli[j]) + ", must be >= 2");
    }
  }
  const int rank = static_cast<int>(moduli.size());
  return GroupContext(rank, GroupMode::Finite, std::move(moduli));
}

void GroupContext::require_finite(const char* what) const {
  if (!is_finite()) throw ValidationError(std::string(what) + " requires a finite group context");
}

bool GroupContext::uniform_modulus() const {
  return is_finite() &&
         std::all_of(moduli_.begin(), moduli_.end(), [&](auto n) { return n == moduli_[0]; });
}

std::int64_t GroupContext::modulus() const {
  if (!uniform_modulus()) {
    throw ValidationError("operation requires a finite context with a single modulus");
  }
  return moduli_[0];
}

std::size_t GroupContext::order() const {
  require_finite("order");
  std::size_t n = 1;
  for (auto m : moduli_) n *= static_cast<std::size_t>(m);
  return n;
}

double GroupContext::norm_const() const { return 1.0 / std::sqrt(static_cast<double>(order())); }

GroupPoint GroupContext::point(std::vector<std::int64_t> coords) const {
  GroupPoint p(std::move(coords));
  check_rank(*this, p, "group point");
  if (is_finite()) {
    for (std::size_t j = 0; j < p.coords.size(); ++j) p.coords[j] = reduce(p.coords[j], moduli_[j]);
  }
  return p;
}

GroupPoint GroupContext::zero() const {
  return GroupPoint(std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0));
}

GroupPoint GroupContext::add(const GroupPoint& p, const GroupPoint& q) const {
  check_rank(*this, p, "add");
  check_rank(*this, q, "add");
  GroupPoint r = p;
  for (std::size_t j = 0; j < r.coords.size(); ++j) {
    r.coords[j] += q.coords[j];
    if (is_finite()) r.coords[j] = reduce(r.coords[j], moduli_[j]);
  }
  return r;
}

GroupPoint GroupContext::negate(const GroupPoint& p) const {
  check_rank(*this, p, "negate");
  GroupPoint r = p;
  for (std::size_t j = 0; j < r.coords.size(); ++j) {
    r.coords[j] = -r.coords[j];
    if (is_finite()) r.coords[j] = reduce(r.coords[j], moduli_[j]);
  }
  return r;
}

GroupPoint GroupContext::sub(const GroupPoint& p, const GroupPoint& q) const {
  return add(p, negate(q));
}

bool GroupContext::contains(const GroupPoint& p) const {
  if (p.size() != static_cast<std::size_t>(rank_)) return false;
  if (!is_finite()) return true;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < 0 || p[j] >= moduli_[j]) return false;
  }
  return true;
}

std::size_t GroupContext::index_of(const GroupPoint& p) const {
  require_finite("index_of");
  check_rank(*this, p, "index_of");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    idx = idx * static_cast<std::size_t>(moduli_[j]) +
          static_cast<std::size_t>(reduce(p[j], moduli_[j]));
  }
  return idx;
}

GroupPoint GroupContext::point_at(std::size_t index) const {
  require_finite("point_at");
  GroupPoint p = zero();
  for (std::size_t j = p.size(); j-- > 0;) {
    auto n = static_cast<std::size_t>(moduli_[j]);
    p.coords[j] = static_cast<std::int64_t>(index % n);
    index /= n;
  }
  return p;
}

std::vector<GroupPoint> GroupContext::all_points() const {
  std::vector<GroupPoint> pts;
  pts.reserve(order());
  for (std::size_t i = 0; i < order(); ++i) pts.push_back(point_at(i));
  return pts;
}

double pairing_turns(const GroupContext& ctx, const GroupPoint& u, const GroupPoint& xi) {
  if (!ctx.is_finite()) throw ValidationError("pairing_turns: finite context expected");
  check_rank(ctx, u, "pairing");
  check_rank(ctx, xi, "pairing");
  double turns = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const auto n = ctx.moduli()[j];
    turns += static_cast<double>(reduce(reduce(u[j], n) * reduce(xi[j], n), n)) /
             static_cast<double>(n);
  }
  return turns - std::floor(turns);
}

Complex pairing(const GroupContext& ctx, const GroupPoint& u, const GroupPoint& xi) {
  return unit_phase(pairing_turns(ctx, u, xi));
}

Complex pairing(const GroupContext& ctx, const GroupPoint& p, std::span<const double> t) {
  if (!ctx.is_lattice()) throw ValidationError("torus pairing requires a lattice context");
  check_rank(ctx, p, "pairing");
  if (t.size() != p.size()) {
    throw ValidationError("torus pairing: torus point has " + std::to_string(t.size()) +
                          " coordinates, context rank is " + std::to_string(ctx.rank()));
  }
  double turns = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) turns += static_cast<double>(p[j]) * t[j];
  return unit_phase(turns);
}

FiniteVector::FiniteVector(GroupContext ctx)
    : ctx_(std::move(ctx)), values_(ctx_.order(), Complex{}) {}

FiniteVector::FiniteVector(GroupContext ctx, std::vector<Complex> values)
    : ctx_(std::move(ctx)), values_(std::move(values)) {
  if (values_.size() != ctx_.order()) {
    throw ValidationError("finite vector: expected " + std::to_string(ctx_.order()) +
                          " values, got " + std::to_string(values_.size()));
  }
}

FiniteVector FiniteVector::delta(const GroupContext& ctx, const GroupPoint& at, Complex value) {
  FiniteVector f(ctx);
  f.at(at) = value;
  return f;
}

FiniteVector FiniteVector::constant(const GroupContext& ctx, Complex value) {
  return FiniteVector(ctx, std::vector<Complex>(ctx.order(), value));
}

FiniteVector& FiniteVector::operator+=(const FiniteVector& other) {
  check_same(ctx_, other.ctx_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

FiniteVector& FiniteVector::operator-=(const FiniteVector& other) {
  check_same(ctx_, other.ctx_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

FiniteVector& FiniteVector::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

FiniteVector FiniteVector::hadamard(const FiniteVector& other) const {
  check_same(ctx_, other.ctx_);
  FiniteVector r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] *= other.values_[i];
  return r;
}

FiniteVector FiniteVector::translated(const GroupPoint& w) const {
  FiniteVector r(ctx_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    r.values_[i] = values_[ctx_.index_of(ctx_.add(ctx_.point_at(i), w))];
  }
  return r;
}

double FiniteVector::l2_norm() const {
  double s = 0.0;
  for (auto v : values_) s += std::norm(v);
  return std::sqrt(s);
}

double FiniteVector::max_abs() const {
  double m = 0.0;
  for (auto v : values_) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const FiniteVector& a, const FiniteVector& b) {
  return (a - b).max_abs();
}

namespace {

FiniteVector transform(const FiniteVector& f, double sign) {
  const auto& ctx = f.context();
  const std::size_t n = ctx.order();
  const auto pts = ctx.all_points();
  FiniteVector out(ctx);
  for (std::size_t v = 0; v < n; ++v) {
    Complex acc{};
    for (std::size_t x = 0; x < n; ++x) {
      acc += unit_phase(sign * pairing_turns(ctx, pts[v], pts[x])) * f[x];
    }
    out[v] = acc * ctx.norm_const();
  }
  return out;
}

}  // namespace

FiniteVector fourier(const FiniteVector& f) {
  if (!f.context().is_finite()) throw ValidationError("fourier: lattice mode has no dense transform");
  return transform(f, 1.0);
}

FiniteVector inverse_fourier(const FiniteVector& f) {
  if (!f.context().is_finite()) throw ValidationError("inverse_fourier: lattice mode has no dense transform");
  return transform(f, -1.0);
}

}  // namespace nctorus
