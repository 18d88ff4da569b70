#include "nctorus/paramdeform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nctorus/errors.hpp"

namespace nctorus {
namespace {

void require_same_grid(const BaseGrid& a, const BaseGrid& b, const char* what) {
  if (!(a == b)) throw ContextMismatch(std::string(what) + ": grids differ");
}

}  // namespace

BaseGrid::BaseGrid(Topology topology, std::vector<double> samples)
    : topology_(topology), samples_(std::move(samples)) {
  if (samples_.empty()) throw ValidationError("grid: at least one sample required");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double y = samples_[i];
    if (!(y >= 0.0 && y <= 1.0)) throw ValidationError("grid: sample " + std::to_string(i) + " outside [0, 1]");
    if (i > 0 && !(samples_[i - 1] < y)) throw ValidationError("grid: samples must be strictly increasing");
  }
  if (topology_ == Topology::Circle && samples_.back() == 1.0 && samples_.front() == 0.0) {
    throw ValidationError("grid: a circle stores 0 and 1 once");
  }
}

BaseGrid BaseGrid::uniform(Topology topology, std::size_t count) {
  if (count == 0) throw ValidationError("grid: size must be positive");
  std::vector<double> s(count);
  if (topology == Topology::Circle) {
    for (std::size_t i = 0; i < count; ++i) s[i] = static_cast<double>(i) / static_cast<double>(count);
  } else if (count == 1) {
    s[0] = 0.0;
  } else {
    for (std::size_t i = 0; i < count; ++i) s[i] = static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return BaseGrid(topology, std::move(s));
}

CocycleField::CocycleField(BaseGrid grid, std::vector<SkewForm> forms, double hbar)
    : grid_(std::move(grid)), forms_(std::move(forms)), hbar_(hbar) {
  if (forms_.size() != grid_.size()) {
    throw ValidationError("cocycle field: " + std::to_string(forms_.size()) + " forms for " +
                          std::to_string(grid_.size()) + " samples");
  }
  for (const auto& f : forms_) {
    if (f.dim() != forms_.front().dim()) throw ValidationError("cocycle field: forms of mixed dimension");
  }
}

CocycleField CocycleField::constant(BaseGrid grid, const SkewForm& form, double hbar) {
  std::vector<SkewForm> forms(grid.size(), form);
  return CocycleField(std::move(grid), std::move(forms), hbar);
}

Bicharacter CocycleField::cocycle(const GroupContext& ctx, std::size_t i) const {
  return Bicharacter::from_form(ctx, forms_.at(i), hbar_);
}

double CocycleField::max_adjacent_variation() const {
  double worst = 0.0;
  auto gap = [&](std::size_t i, std::size_t j) {
    worst = std::max(worst, hbar_ * (forms_[i].matrix() - forms_[j].matrix()).cwiseAbs().maxCoeff());
  };
  for (std::size_t i = 1; i < forms_.size(); ++i) gap(i - 1, i);
  if (grid_.topology() == Topology::Circle && forms_.size() > 1) gap(forms_.size() - 1, 0);
  return std::abs(worst);
}

CocycleField compose_fields(const CocycleField& a, const CocycleField& b) {
  require_same_grid(a.grid(), b.grid(), "compose_fields");
  if (a.dim() != b.dim()) throw ValidationError("compose_fields: forms of different dimension");
  std::vector<SkewForm> forms;
  forms.reserve(a.grid().size());
  const bool same = a.hbar() == b.hbar();
  for (std::size_t i = 0; i < a.grid().size(); ++i) {
    forms.push_back(same ? a.form(i) + b.form(i) : a.form(i).scaled(a.hbar()) + b.form(i).scaled(b.hbar()));
  }
  return CocycleField(a.grid(), std::move(forms), same ? a.hbar() : 1.0);
}

ParamElement::ParamElement(BaseGrid grid, std::vector<FourierElement> fibers)
    : grid_(std::move(grid)), fibers_(std::move(fibers)) {
  if (fibers_.size() != grid_.size()) {
    throw ValidationError("param element: " + std::to_string(fibers_.size()) + " fibers for " +
                          std::to_string(grid_.size()) + " samples");
  }
  for (const auto& f : fibers_) {
    if (!(f.context() == fibers_.front().context())) throw ContextMismatch("param element: fibers on different contexts");
  }
  if (!context().is_lattice()) throw ValidationError("param element: lattice context required");
}

ParamElement ParamElement::constant(BaseGrid grid, const FourierElement& fiber) {
  std::vector<FourierElement> fibers(grid.size(), fiber);
  return ParamElement(std::move(grid), std::move(fibers));
}

std::vector<Complex> ParamElement::component(const GroupPoint& p) const {
  std::vector<Complex> out;
  out.reserve(fibers_.size());
  for (const auto& f : fibers_) out.push_back(f.coefficient(p));
  return out;
}

std::size_t ParamElement::max_support() const {
  std::size_t m = 0;
  for (const auto& f : fibers_) m = std::max(m, f.support_size());
  return m;
}

double max_l1_distance(const ParamElement& a, const ParamElement& b) {
  require_same_grid(a.grid(), b.grid(), "max_l1_distance");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, l1_distance(a.fiber(i), b.fiber(i)));
  return worst;
}

ParamElement param_star(const ParamElement& a, const ParamElement& b, const CocycleField& sigma) {
  require_same_grid(a.grid(), b.grid(), "param_star");
  require_same_grid(a.grid(), sigma.grid(), "param_star");
  if (!(a.context() == b.context())) throw ContextMismatch("param_star: operands on different contexts");
  std::vector<FourierElement> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back(star(a.fiber(i), b.fiber(i), sigma.cocycle(a.context(), i)));
  }
  return ParamElement(a.grid(), std::move(out));
}

ParamElement c0x_action(const ScalarField& f, const ParamElement& a) {
  require_same_grid(f.grid, a.grid(), "c0x_action");
  if (f.values.size() != f.grid.size()) throw ValidationError("scalar field: one value per sample required");
  std::vector<FourierElement> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(f.values[i] * a.fiber(i));
  return ParamElement(a.grid(), std::move(out));
}

double linearity_check(const ScalarField& f, const ParamElement& a, const ParamElement& b,
                       const CocycleField& sigma) {
  const ParamElement x = c0x_action(f, param_star(a, b, sigma));
  const ParamElement y = param_star(c0x_action(f, a), b, sigma);
  const ParamElement z = param_star(a, c0x_action(f, b), sigma);
  return std::max({max_l1_distance(x, y), max_l1_distance(x, z), max_l1_distance(y, z)});
}

ParamElement torus_action(std::span<const double> t, const ParamElement& a) {
  std::vector<FourierElement> out;
  out.reserve(a.size());
  for (const auto& f : a.fibers()) out.push_back(translate(f, t));
  return ParamElement(a.grid(), std::move(out));
}

CocycleField heisenberg_field(double hbar, const BaseGrid& grid) {
  if (grid.topology() != Topology::Circle) throw ValidationError("heisenberg_field: circle grid required");
  const SkewForm j = SkewForm::standard_symplectic(2);
  std::vector<SkewForm> forms;
  forms.reserve(grid.size());
  for (double y : grid.samples()) forms.push_back(j.scaled(y));
  return CocycleField(grid, std::move(forms), hbar);
}

Complex commutation_phase(const CocycleField& field, std::size_t sample) {
  if (field.dim() < 2) throw ValidationError("commutation_phase: rank 2 or more required");
  const auto ctx = GroupContext::lattice(field.dim());
  std::vector<std::int64_t> c1(field.dim(), 0), c2(field.dim(), 0);
  c1[0] = 1;
  c2[1] = 1;
  const auto e1 = ctx.point(c1);
  const auto e2 = ctx.point(c2);
  const auto sigma = field.cocycle(ctx, sample);
  const auto d1 = FourierElement::delta(ctx, e1);
  const auto d2 = FourierElement::delta(ctx, e2);
  const auto sum = ctx.add(e1, e2);
  return star(d1, d2, sigma).coefficient(sum) / star(d2, d1, sigma).coefficient(sum);
}

RationalTurns RationalTurns::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("rational phase: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Complex RationalTurns::value() const { return unit_phase(static_cast<double>(num) / static_cast<double>(den)); }

RationalTurns heisenberg_phase_exact(std::int64_t p, std::int64_t q, std::int64_t hbar) {
  return RationalTurns::make(-hbar * p, q);
}

IntMatrix standard_symplectic_int(int dim) {
  if (dim <= 0 || dim % 2 != 0) throw ValidationError("symplectic form: even positive dimension required");
  const int n = dim / 2;
  IntMatrix j = IntMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

bool monodromy_check(const IntMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0 || rho.rows() % 2 != 0) return false;
  const IntMatrix j = standard_symplectic_int(static_cast<int>(rho.rows()));
  return IntMatrix(rho.transpose() * j * rho) == j;
}

MonodromyData::MonodromyData(IntMatrix rho) : rho_(std::move(rho)) {
  if (!monodromy_check(rho_)) throw ValidationError("monodromy: matrix is not symplectic");
  const IntMatrix j = standard_symplectic_int(static_cast<int>(rho_.rows()));
  // rho^{-1} = -J rho^T J, so rho^{-T} = -J rho J.
  rho_inv_t_ = -(j * rho_ * j);
}

GroupPoint MonodromyData::dual_inverse(const GroupPoint& p) const {
  if (static_cast<Eigen::Index>(p.size()) != rho_.rows()) throw ValidationError("monodromy: point has wrong rank");
  Eigen::Map<const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>> v(p.coords.data(), rho_.rows());
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> r = rho_inv_t_ * v;
  return GroupPoint(std::vector<std::int64_t>(r.data(), r.data() + r.size()));
}

GroupPoint MonodromyData::dual(const GroupPoint& p) const {
  if (static_cast<Eigen::Index>(p.size()) != rho_.rows()) throw ValidationError("monodromy: point has wrong rank");
  Eigen::Map<const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>> v(p.coords.data(), rho_.rows());
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> r = rho_.transpose() * v;
  return GroupPoint(std::vector<std::int64_t>(r.data(), r.data() + r.size()));
}

namespace {

void require_cover_grid(const BaseGrid& grid, const char* what) {
  if (grid.topology() != Topology::Interval || grid.size() < 2 || grid[0] != 0.0 || grid[grid.size() - 1] != 1.0) {
    throw ValidationError(std::string(what) + ": interval grid sampling both 0 and 1 required");
  }
}

}  // namespace

double equivariant_test(const ParamElement& a, const MonodromyData& rho) {
  require_cover_grid(a.grid(), "equivariant_test");
  if (a.context().rank() != rho.matrix().rows()) throw ValidationError("equivariant_test: rank mismatch");
  const auto& start = a.fiber(0);
  const auto& end = a.fiber(a.size() - 1);
  double worst = 0.0;
  for (const auto& [p, c] : end.coeffs()) worst = std::max(worst, std::abs(c - start.coefficient(rho.dual_inverse(p))));
  for (const auto& [q, c] : start.coeffs()) worst = std::max(worst, std::abs(end.coefficient(rho.dual(q)) - c));
  return worst;
}

ParamElement equivariant_extension(const FourierElement& f0, const MonodromyData& rho, const BaseGrid& grid) {
  require_cover_grid(grid, "equivariant_extension");
  FourierElement::Coeffs pushed;
  for (const auto& [q, c] : f0.coeffs()) pushed[rho.dual(q)] = c;
  const FourierElement f1(f0.context(), std::move(pushed));
  std::vector<FourierElement> fibers;
  fibers.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == 0) {
      fibers.push_back(f0);
    } else if (i + 1 == grid.size()) {
      fibers.push_back(f1);
    } else {
      fibers.push_back(Complex(1.0 - grid[i]) * f0 + Complex(grid[i]) * f1);
    }
  }
  return ParamElement(grid, std::move(fibers));
}

double equivariant_product_closure(const ParamElement& a, const ParamElement& b, const MonodromyData& rho,
                                   const CocycleField& sigma) {
  constexpr double kInputTolerance = 1e-12;
  if (equivariant_test(a, rho) > kInputTolerance) throw PreconditionError("equivariant_product_closure: first operand is not equivariant");
  if (equivariant_test(b, rho) > kInputTolerance) throw PreconditionError("equivariant_product_closure: second operand is not equivariant");
  return equivariant_test(param_star(a, b, sigma), rho);
}

}  // namespace nctorus
