#include "nctorus/cocycles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "nctorus/errors.hpp"

namespace nctorus {

namespace modular {

__extension__ using Wide = __int128;

std::int64_t reduce(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>((static_cast<Wide>(reduce(a, n)) * reduce(b, n)) % n);
}

std::optional<std::int64_t> inverse(std::int64_t a, std::int64_t n) {
  std::int64_t old_r = reduce(a, n), r = n, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) return std::nullopt;
  return reduce(old_s, n);
}

std::int64_t determinant(const IntMatrix& m, std::int64_t n) {
  const auto k = m.rows();
  if (k == 0) return reduce(1, n);
  if (k == 1) return reduce(m(0, 0), n);
  if (k > 8) throw ValidationError("modular determinant: dimension above 8 is not supported");
  std::int64_t det = 0;
  for (Eigen::Index c = 0; c < k; ++c) {
    if (reduce(m(0, c), n) == 0) continue;
    IntMatrix minor(k - 1, k - 1);
    for (Eigen::Index i = 1; i < k; ++i) {
      for (Eigen::Index j = 0, jj = 0; j < k; ++j) {
        if (j != c) minor(i - 1, jj++) = m(i, j);
      }
    }
    std::int64_t term = mul(m(0, c), determinant(minor, n), n);
    det = reduce(c % 2 == 0 ? det + term : det - term, n);
  }
  return det;
}

}  // namespace modular

namespace {

std::int64_t pair_modulus(const GroupContext& ctx, Eigen::Index i, Eigen::Index j) {
  return std::gcd(ctx.moduli()[i], ctx.moduli()[j]);
}

void require_point(const GroupContext& ctx, const GroupPoint& p, const char* what) {
  if (p.size() != static_cast<std::size_t>(ctx.rank())) {
    throw ContextMismatch(std::string(what) + ": point of rank " + std::to_string(p.size()) +
                          " in a rank-" + std::to_string(ctx.rank()) + " context");
  }
}

void require_square(Eigen::Index rows, Eigen::Index cols, int rank, const char* what) {
  if (rows != rank || cols != rank) {
    throw ValidationError(std::string(what) + ": expected a " + std::to_string(rank) + "x" +
                          std::to_string(rank) + " matrix, got " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
}

IntMatrix reduce_entries(const GroupContext& ctx, IntMatrix b) {
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = modular::reduce(b(i, j), pair_modulus(ctx, i, j));
  }
  return b;
}

void require_same_context(const Bicharacter& a, const Bicharacter& b, const char* what) {
  if (!(a.context() == b.context())) throw ContextMismatch(std::string(what) + ": context mismatch");
}

}  // namespace

// --- SkewForm ---------------------------------------------------------------

SkewForm::SkewForm(RealMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ValidationError("skew form: matrix is not square");
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = 0; j < m_.cols(); ++j) {
      if (m_(i, j) != -m_(j, i)) {
        throw ValidationError("skew form: entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") does not negate its transpose");
      }
    }
  }
}

SkewForm SkewForm::zero(int n) { return SkewForm(RealMatrix::Zero(n, n)); }

SkewForm SkewForm::standard_symplectic(int dim) {
  if (dim < 2 || dim % 2 != 0) throw ValidationError("standard symplectic form needs an even dimension");
  const int n = dim / 2;
  RealMatrix j = RealMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return SkewForm(std::move(j));
}

double SkewForm::operator()(const GroupPoint& p, const GroupPoint& q) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    if (p[i] == 0) continue;
    for (Eigen::Index j = 0; j < m_.cols(); ++j) s += static_cast<double>(p[i]) * m_(i, j) * static_cast<double>(q[j]);
  }
  return s;
}

SkewForm operator+(const SkewForm& a, const SkewForm& b) {
  if (a.dim() != b.dim()) throw ValidationError("skew form sum: dimension mismatch");
  return SkewForm(RealMatrix(a.m_ + b.m_));
}

// --- Bicharacter ------------------------------------------------------------

Bicharacter::Bicharacter(GroupContext ctx, RealMatrix a, double hbar, IntMatrix b)
    : ctx_(std::move(ctx)), real_(std::move(a)), hbar_(hbar), int_(std::move(b)) {}

Bicharacter Bicharacter::lattice(GroupContext ctx, RealMatrix a, double hbar) {
  if (!ctx.is_lattice()) throw ValidationError("lattice bicharacter on a finite context");
  require_square(a.rows(), a.cols(), ctx.rank(), "lattice bicharacter");
  if (!a.allFinite() || !std::isfinite(hbar)) throw ValidationError("lattice bicharacter: non-finite entries");
  return Bicharacter(std::move(ctx), std::move(a), hbar, IntMatrix());
}

Bicharacter Bicharacter::from_form(const GroupContext& ctx, const SkewForm& form, double hbar) {
  return lattice(ctx, form.matrix(), hbar);
}

Bicharacter Bicharacter::finite(GroupContext ctx, IntMatrix b) {
  if (!ctx.is_finite()) throw ValidationError("finite bicharacter on a lattice context");
  require_square(b.rows(), b.cols(), ctx.rank(), "finite bicharacter");
  IntMatrix reduced = reduce_entries(ctx, std::move(b));
  return Bicharacter(std::move(ctx), RealMatrix(), 0.0, std::move(reduced));
}

Bicharacter Bicharacter::trivial(const GroupContext& ctx) {
  const int n = ctx.rank();
  if (ctx.is_lattice()) return lattice(ctx, RealMatrix::Zero(n, n), 0.0);
  return finite(ctx, IntMatrix::Zero(n, n));
}

double Bicharacter::turns(const GroupPoint& xi, const GroupPoint& eta) const {
  const auto n = static_cast<Eigen::Index>(ctx_.rank());
  if (ctx_.is_lattice()) {
    // Extended precision keeps the reduced phase accurate for large frequencies.
    long double s = 0.0L;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (xi[i] == 0) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        s += static_cast<long double>(xi[i]) * real_(i, j) * static_cast<long double>(eta[j]);
      }
    }
    const long double t = -0.5L * static_cast<long double>(hbar_) * s;
    return static_cast<double>(t - std::floor(t));
  }
  double t = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (int_(i, j) == 0) continue;
      const auto m = pair_modulus(ctx_, i, j);
      const auto num = modular::mul(modular::mul(int_(i, j), xi[i], m), eta[j], m);
      t += static_cast<double>(num) / static_cast<double>(m);
    }
  }
  return t - std::floor(t);
}

Complex Bicharacter::operator()(const GroupPoint& xi, const GroupPoint& eta) const {
  return unit_phase(turns(xi, eta));
}

Bicharacter Bicharacter::conjugate() const {
  if (is_lattice()) return Bicharacter(ctx_, -real_, hbar_, IntMatrix());
  return finite(ctx_, IntMatrix(-int_));
}

Bicharacter Bicharacter::transpose() const {
  if (is_lattice()) return Bicharacter(ctx_, real_.transpose(), hbar_, IntMatrix());
  return finite(ctx_, IntMatrix(int_.transpose()));
}

bool Bicharacter::is_trivial() const {
  if (is_lattice()) return hbar_ == 0.0 || real_.isZero(0.0);
  return int_.isZero();
}

Complex eval(const Bicharacter& sigma, const GroupPoint& xi, const GroupPoint& eta) {
  require_point(sigma.context(), xi, "eval");
  require_point(sigma.context(), eta, "eval");
  return sigma(xi, eta);
}

// --- checks -----------------------------------------------------------------

CheckReport cocycle_check(const GroupContext& ctx, const CocycleFunction& sigma,
                          const std::vector<Triple>& triples, double tolerance) {
  if (triples.empty()) throw ValidationError("cocycle_check: empty sample set");
  double worst = 0.0;
  for (const auto& [x, y, z] : triples) {
    const Complex lhs = sigma(x, y) * sigma(ctx.add(x, y), z);
    const Complex rhs = sigma(x, ctx.add(y, z)) * sigma(y, z);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= tolerance, worst};
}

CheckReport cocycle_check(const Bicharacter& sigma, const std::vector<Triple>& triples,
                          double tolerance) {
  return cocycle_check(
      sigma.context(), [&](const GroupPoint& a, const GroupPoint& b) { return sigma(a, b); }, triples,
      tolerance);
}

std::vector<Triple> exhaustive_triples(const GroupContext& ctx) {
  const auto pts = ctx.all_points();
  std::vector<Triple> out;
  out.reserve(pts.size() * pts.size() * pts.size());
  for (const auto& x : pts)
    for (const auto& y : pts)
      for (const auto& z : pts) out.push_back({x, y, z});
  return out;
}

Bicharacter antisymmetrize(const Bicharacter& sigma) {
  const auto& ctx = sigma.context();
  if (sigma.is_lattice()) {
    RealMatrix skew = 0.5 * (sigma.matrix() - sigma.matrix().transpose());
    return Bicharacter::lattice(ctx, std::move(skew), sigma.hbar());
  }
  for (auto n : ctx.moduli()) {
    if (n % 2 == 0) throw PreconditionError("antisymmetrize: modulus " + std::to_string(n) + " is even; 2 is not invertible");
  }
  const auto& b = sigma.int_matrix();
  IntMatrix out(b.rows(), b.cols());
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const auto m = pair_modulus(ctx, i, j);
      const auto half = *modular::inverse(2, m);
      out(i, j) = modular::mul(half, b(i, j) - b(j, i), m);
    }
  }
  return Bicharacter::finite(ctx, std::move(out));
}

bool cohomologous_check(const Bicharacter& a, const Bicharacter& b) {
  require_same_context(a, b, "cohomologous_check");
  if (a.is_lattice()) {
    const RealMatrix d = a.exponent() - b.exponent();
    const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
    return (d - d.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  }
  const auto& ctx = a.context();
  const IntMatrix d = a.int_matrix() - b.int_matrix();
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
      if (modular::reduce(d(i, j) - d(j, i), pair_modulus(ctx, i, j)) != 0) return false;
    }
  }
  return true;
}

Bicharacter compose_cocycles(const Bicharacter& a, const Bicharacter& b) {
  require_same_context(a, b, "compose_cocycles");
  if (a.is_lattice()) {
    if (a.hbar() == b.hbar()) return Bicharacter::lattice(a.context(), a.matrix() + b.matrix(), a.hbar());
    return Bicharacter::lattice(a.context(), a.exponent() + b.exponent(), 1.0);
  }
  return Bicharacter::finite(a.context(), IntMatrix(a.int_matrix() + b.int_matrix()));
}

// --- LinearMap --------------------------------------------------------------

LinearMap LinearMap::real(RealMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("linear map: matrix is not square");
  LinearMap out;
  out.real_ = std::move(m);
  return out;
}

LinearMap LinearMap::modular(IntMatrix m, std::int64_t modulus) {
  if (m.rows() != m.cols()) throw ValidationError("linear map: matrix is not square");
  if (modulus < 2) throw ValidationError("linear map: modulus must be >= 2");
  for (auto& x : m.reshaped()) x = modular::reduce(x, modulus);
  LinearMap out;
  out.int_ = std::move(m);
  out.modulus_ = modulus;
  return out;
}

int LinearMap::dim() const {
  return static_cast<int>(is_modular() ? int_.rows() : real_.rows());
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  if (is_modular() != inner.is_modular() || modulus() != inner.modulus() || dim() != inner.dim()) {
    throw ValidationError("linear map composition: incompatible maps");
  }
  if (!is_modular()) return real(real_ * inner.real_);
  const auto n = modulus();
  IntMatrix out = IntMatrix::Zero(int_.rows(), inner.int_.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      for (Eigen::Index k = 0; k < int_.cols(); ++k)
        out(i, j) = modular::reduce(out(i, j) + modular::mul(int_(i, k), inner.int_(k, j), n), n);
  return modular(std::move(out), n);
}

LinearMap LinearMap::transpose() const {
  if (!is_modular()) return real(real_.transpose());
  return modular(int_.transpose(), modulus());
}

LinearMap LinearMap::negated() const {
  if (!is_modular()) return real(-real_);
  return modular(IntMatrix(-int_), modulus());
}

bool LinearMap::is_invertible() const {
  if (!is_modular()) {
    if (real_.size() == 0) return true;
    Eigen::FullPivLU<RealMatrix> lu(real_);
    return lu.isInvertible();
  }
  return modular::inverse(modular::determinant(int_, modulus()), modulus()).has_value();
}

bool LinearMap::is_zero() const {
  return is_modular() ? int_.isZero() : real_.isZero(0.0);
}

LinearMap LinearMap::inverse() const {
  if (!is_invertible()) throw PreconditionError("linear map is not invertible");
  if (!is_modular()) return real(real_.inverse());
  const auto n = modulus();
  const auto k = int_.rows();
  const auto det_inv = *modular::inverse(modular::determinant(int_, n), n);
  if (k == 1) return modular(IntMatrix::Constant(1, 1, det_inv), n);
  IntMatrix adj(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      IntMatrix minor(k - 1, k - 1);
      for (Eigen::Index r = 0, rr = 0; r < k; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < k; ++c) {
          if (c != j) minor(rr, cc++) = int_(r, c);
        }
        ++rr;
      }
      const auto cof = modular::determinant(minor, n);
      adj(j, i) = (i + j) % 2 == 0 ? cof : modular::reduce(-cof, n);
    }
  }
  for (auto& x : adj.reshaped()) x = modular::mul(x, det_inv, n);
  return modular(std::move(adj), n);
}

GroupPoint LinearMap::apply(const GroupContext& ctx, const GroupPoint& p) const {
  if (!is_modular()) throw ValidationError("linear map: only modular maps act on group points");
  if (ctx.modulus() != modulus() || ctx.rank() != dim()) throw ContextMismatch("linear map: context mismatch");
  std::vector<std::int64_t> out(static_cast<std::size_t>(dim()), 0);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out[i] = modular::reduce(out[i] + modular::mul(int_(i, j), p[j], modulus()), modulus());
  return GroupPoint(std::move(out));
}

double LinearMap::distance(const LinearMap& other) const {
  if (is_modular() != other.is_modular() || dim() != other.dim()) throw ValidationError("linear map distance: incompatible maps");
  if (!is_modular()) return (real_ - other.real_).cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < int_.size(); ++i) {
    if (modular::reduce(int_.reshaped()(i) - other.int_.reshaped()(i), modulus()) != 0) return 1.0;
  }
  return 0.0;
}

// --- sigma^1, T, T* ---------------------------------------------------------

LinearMap sigma_one(const Bicharacter& sigma) {
  if (sigma.is_lattice()) {
    // exp(-pi i hbar xi^T A eta) = exp(2 pi i eta . t) with t = -(hbar/2) A^T xi.
    return LinearMap::real(-0.5 * sigma.hbar() * sigma.matrix().transpose());
  }
  return LinearMap::modular(sigma.int_matrix().transpose(), sigma.context().modulus());
}

bool is_nondegenerate(const Bicharacter& sigma) { return sigma_one(sigma).is_invertible(); }

AdjointPair T_map(const Bicharacter& sigma, const Bicharacter& e) {
  require_same_context(sigma, e, "T_map");
  const LinearMap e_one = sigma_one(e);
  if (!e_one.is_invertible()) throw PreconditionError("T_map: bicharacter e is degenerate");
  LinearMap t = sigma_one(sigma).compose(e_one);
  // (T*)^T M = M T with M the exponent matrix of e.
  const LinearMap m = e.is_lattice() ? LinearMap::real(e.exponent())
                                     : LinearMap::modular(e.int_matrix(), e.context().modulus());
  LinearMap t_star = m.compose(t).compose(m.inverse()).transpose();
  return {std::move(t), std::move(t_star)};
}

double adjoint_deviation(const Bicharacter& e, const AdjointPair& maps) {
  const auto& ctx = e.context();
  double worst = 0.0;
  for (const auto& u : ctx.all_points()) {
    const auto tsu = maps.t_star.apply(ctx, u);
    for (const auto& w : ctx.all_points()) {
      worst = std::max(worst, std::abs(e(tsu, w) - e(u, maps.t.apply(ctx, w))));
    }
  }
  return worst;
}

double bicharacter_relation_deviation(const Bicharacter& sigma, const Bicharacter& e,
                                      const LinearMap& t) {
  require_same_context(sigma, e, "bicharacter_relation_deviation");
  const auto& ctx = e.context();
  const LinearMap e_one = sigma_one(e);
  double worst = 0.0;
  for (const auto& u : ctx.all_points()) {
    const auto eu = e_one.apply(ctx, u);
    const auto tu = t.apply(ctx, u);
    for (const auto& v : ctx.all_points()) {
      worst = std::max(worst, std::abs(sigma(eu, e_one.apply(ctx, v)) - e(tu, v)));
    }
  }
  return worst;
}

}  // namespace nctorus
