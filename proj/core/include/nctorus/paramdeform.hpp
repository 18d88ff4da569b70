#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nctorus/abelian.hpp"
#include "nctorus/cocycles.hpp"
#include "nctorus/deform.hpp"

namespace nctorus {

enum class Topology { Interval, Circle };

/// Sample points of [0, 1]. On a circle 0 ~ 1 and the endpoint 1 is not stored.
class BaseGrid {
 public:
  BaseGrid(Topology topology, std::vector<double> samples);
  static BaseGrid uniform(Topology topology, std::size_t count);

  Topology topology() const { return topology_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  std::span<const double> samples() const { return samples_; }

  friend bool operator==(const BaseGrid&, const BaseGrid&) = default;

 private:
  Topology topology_;
  std::vector<double> samples_;
};

/// One skew form per sample, deformed with a common hbar.
class CocycleField {
 public:
  CocycleField(BaseGrid grid, std::vector<SkewForm> forms, double hbar);
  static CocycleField constant(BaseGrid grid, const SkewForm& form, double hbar);

  const BaseGrid& grid() const { return grid_; }
  double hbar() const { return hbar_; }
  int dim() const { return forms_.front().dim(); }
  const SkewForm& form(std::size_t i) const { return forms_[i]; }
  Bicharacter cocycle(const GroupContext& ctx, std::size_t i) const;

  /// Largest max-norm difference of adjacent forms; includes the wrap-around pair on a circle.
  double max_adjacent_variation() const;

 private:
  BaseGrid grid_;
  std::vector<SkewForm> forms_;
  double hbar_;
};

/// Samplewise exponent sum of two fields (ratio of hbars folded into the forms).
CocycleField compose_fields(const CocycleField& a, const CocycleField& b);

class ParamElement {
 public:
  ParamElement(BaseGrid grid, std::vector<FourierElement> fibers);
  static ParamElement constant(BaseGrid grid, const FourierElement& fiber);

  const BaseGrid& grid() const { return grid_; }
  const GroupContext& context() const { return fibers_.front().context(); }
  std::size_t size() const { return fibers_.size(); }
  const FourierElement& fiber(std::size_t i) const { return fibers_[i]; }
  std::span<const FourierElement> fibers() const { return fibers_; }

  /// x -> fiber(x)(p): the graded component at frequency p.
  std::vector<Complex> component(const GroupPoint& p) const;
  /// Largest fiber support; bounded supports stand in for fibrewise Schwartz decay.
  std::size_t max_support() const;

  friend bool operator==(const ParamElement&, const ParamElement&) = default;

 private:
  BaseGrid grid_;
  std::vector<FourierElement> fibers_;
};

double max_l1_distance(const ParamElement& a, const ParamElement& b);

struct ScalarField {
  BaseGrid grid;
  std::vector<Complex> values;
};

ParamElement param_star(const ParamElement& a, const ParamElement& b, const CocycleField& sigma);

ParamElement c0x_action(const ScalarField& f, const ParamElement& a);

/// Largest pairwise l1 deviation among F.(a*b), (F.a)*b and a*(F.b).
double linearity_check(const ScalarField& f, const ParamElement& a, const ParamElement& b,
                       const CocycleField& sigma);

/// Fiberwise translate by t in [0,1)^n.
ParamElement torus_action(std::span<const double> t, const ParamElement& a);

/// Field y -> hbar * y * J on a circle grid, with J the 2x2 standard symplectic form.
CocycleField heisenberg_field(double hbar, const BaseGrid& grid);

/// (delta_{e1} * delta_{e2}) / (delta_{e2} * delta_{e1}) at sample i, from the fiber's star product.
Complex commutation_phase(const CocycleField& field, std::size_t sample);

/// A phase exp(2 pi i num/den) held exactly; normalised to 0 <= num < den, gcd 1.
struct RationalTurns {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static RationalTurns make(std::int64_t num, std::int64_t den);
  RationalTurns operator*(std::int64_t k) const { return make(num * k, den); }
  bool is_identity() const { return num == 0; }
  /// Multiplicative order of the phase.
  std::int64_t order() const { return den; }
  Complex value() const;

  friend bool operator==(const RationalTurns&, const RationalTurns&) = default;
};

/// Commutation phase of the Heisenberg fiber at y = p/q for integer hbar, exactly.
RationalTurns heisenberg_phase_exact(std::int64_t p, std::int64_t q, std::int64_t hbar = 1);

/// Integer 2n x 2n matrix acting on the base torus; must satisfy rho^T J rho = J.
class MonodromyData {
 public:
  /// Throws ValidationError unless rho is symplectic.
  explicit MonodromyData(IntMatrix rho);

  const IntMatrix& matrix() const { return rho_; }
  /// p -> rho^{-T} p, the induced action on frequencies.
  GroupPoint dual_inverse(const GroupPoint& p) const;
  /// p -> rho^T p.
  GroupPoint dual(const GroupPoint& p) const;

 private:
  IntMatrix rho_;
  IntMatrix rho_inv_t_;
};

IntMatrix standard_symplectic_int(int dim);

bool monodromy_check(const IntMatrix& rho);

/// max_p |fiber(1)(p) - fiber(0)(rho^{-T} p)|. Needs an interval grid sampling 0 and 1.
double equivariant_test(const ParamElement& a, const MonodromyData& rho);

/// Interval element whose end fiber is f0 pushed forward by the monodromy,
/// linearly blended in between.
ParamElement equivariant_extension(const FourierElement& f0, const MonodromyData& rho, const BaseGrid& grid);

/// equivariant_test of param_star(a, b, sigma). Inputs must pass equivariant_test;
/// PreconditionError otherwise.
double equivariant_product_closure(const ParamElement& a, const ParamElement& b, const MonodromyData& rho,
                                   const CocycleField& sigma);

}  // namespace nctorus
