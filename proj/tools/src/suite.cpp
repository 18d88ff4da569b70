#include "nctorus/cli/suite.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "nctorus/automorphy.hpp"
#include "nctorus/cli/fixtures.hpp"
#include "nctorus/cli/sampling.hpp"
#include "nctorus/crossed.hpp"
#include "nctorus/errors.hpp"
#include "nctorus/norms.hpp"
#include "nctorus/paramdeform.hpp"

namespace nctorus::cli {

namespace {

using sampling::Rng;

// Tolerances, one per criterion.
constexpr double kDeltaTol = 1e-12;
constexpr double kAssocTol = 1e-10;
constexpr double kInvolutionTol = 1e-12;
constexpr double kRatioLo = 0.45;
constexpr double kRatioHi = 0.55;
constexpr double kClosedFormTol = 1e-12;
constexpr double kIteratedTol = 1e-12;
constexpr double kTranslationTol = 1e-12;
constexpr double kHomomorphismTol = 1e-10;
constexpr double kIdempotenceTol = 1e-12;
constexpr double kDualityTol = 1e-10;
constexpr double kLinearityTol = 1e-12;
constexpr double kPhaseTol = 1e-12;
constexpr double kClosureTol = 1e-12;
constexpr double kControlMin = 1e-3;
constexpr double kNormTol = 1e-3;

/// Collects named maxima and compares each with its bound.
class Ledger {
 public:
  void at_most(const std::string& what, double value, double bound) {
    record(what, value, value <= bound, "<=", bound);
  }
  void at_least(const std::string& what, double value, double bound) {
    record(what, value, value > bound, ">", bound);
  }
  void within(const std::string& what, double value, double lo, double hi) {
    std::ostringstream s;
    s << what << '=' << format_double(value) << " in [" << lo << ',' << hi << ']';
    note(s.str(), value >= lo && value <= hi);
  }
  void require(const std::string& what, bool ok) { note(what + (ok ? "" : " FAILED"), ok); }

  bool passed() const { return passed_; }
  std::string detail() const {
    std::string out;
    for (const auto& p : parts_) out += (out.empty() ? "" : "; ") + p;
    return out;
  }

 private:
  void record(const std::string& what, double value, bool ok, const char* op, double bound) {
    std::ostringstream s;
    s << what << '=' << std::scientific;
    s.precision(2);
    s << value << ' ' << op << ' ' << bound;
    note(s.str(), ok);
  }
  void note(std::string text, bool ok) {
    passed_ = passed_ && ok;
    parts_.push_back(std::move(text));
  }

  bool passed_ = true;
  std::vector<std::string> parts_;
};

const GroupContext kZ2 = GroupContext::lattice(2);

FourierElement delta(const GroupContext& ctx, std::initializer_list<std::int64_t> p, Complex c = 1.0) {
  return FourierElement::delta(ctx, GroupPoint(p), c);
}

void delta_relation(const SuiteOptions&, Rng& rng, Ledger& out) {
  double worst = 0.0;
  bool support_ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const auto sigma = sampling::random_lattice_cocycle(kZ2, rng);
    const auto p = sampling::random_point(kZ2, rng, 50);
    const auto q = sampling::random_point(kZ2, rng, 50);
    const auto prod = star(FourierElement::delta(kZ2, p), FourierElement::delta(kZ2, q), sigma);
    long double bilinear = 0.0L;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) bilinear += static_cast<long double>(p[i]) * sigma.matrix()(i, j) * q[j];
    }
    // Half-turns reduced into [-1, 1] before exponentiating.
    const long double half_turns = std::remainder(-static_cast<long double>(sigma.hbar()) * bilinear, 2.0L);
    const Complex want = std::exp(Complex(0.0, std::numbers::pi * static_cast<double>(half_turns)));
    const auto sum = kZ2.add(p, q);
    support_ok = support_ok && prod.support_size() == 1;
    worst = std::max(worst, std::abs(prod.coefficient(sum) - want));
  }
  out.require("single-point support", support_ok);
  out.at_most("max |coef - phase|", worst, kDeltaTol);
}

void associativity(const SuiteOptions&, Rng& rng, Ledger& out) {
  double worst = 0.0;
  for (const auto& sigma : sampling::cocycle_battery(kZ2)) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = sampling::random_element(kZ2, rng);
      const auto b = sampling::random_element(kZ2, rng);
      const auto c = sampling::random_element(kZ2, rng);
      worst = std::max(worst, l1_distance(star(star(a, b, sigma), c, sigma), star(a, star(b, c, sigma), sigma)));
    }
  }
  out.at_most("max l1 deviation", worst, kAssocTol);
}

void involution_laws(const SuiteOptions&, Rng& rng, Ledger& out) {
  double anti = 0.0;
  double twice = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto sigma = sampling::random_skew_cocycle(kZ2, rng);
    const auto a = sampling::random_element(kZ2, rng);
    const auto b = sampling::random_element(kZ2, rng);
    anti = std::max(anti, l1_distance(involution(star(a, b, sigma), sigma),
                                      star(involution(b, sigma), involution(a, sigma), sigma)));
    twice = std::max(twice, l1_distance(involution(involution(a, sigma), sigma), a));
  }
  out.at_most("(ab)* vs b*a*", anti, kInvolutionTol);
  out.at_most("a** vs a", twice, kInvolutionTol);
}

void semiclassical_limit(const SuiteOptions& options, Rng&, Ledger& out) {
  const auto gamma = SkewForm::standard_symplectic(2);
  const auto a = delta(kZ2, {1, 0}) + delta(kZ2, {-1, 0});
  const auto b = delta(kZ2, {0, 1}) + delta(kZ2, {0, -1});
  constexpr int kWindow = 6;
  for (double hbar : {1e-2, 1e-3}) {
    const double ratio = semiclassical_defect(a, b, gamma, hbar / 2, kWindow, options.bracket_scale) /
                         semiclassical_defect(a, b, gamma, hbar, kWindow, options.bracket_scale);
    out.within("ratio@" + format_double(hbar), ratio, kRatioLo, kRatioHi);
  }
  double worst = 0.0;
  for (double hbar : {0.5, 1e-1, 1e-2, 1e-3}) {
    const Complex quotient = (std::exp(Complex(0.0, -std::numbers::pi * hbar)) - 1.0) / Complex(0.0, hbar);
    const double want = std::abs(quotient + std::numbers::pi);
    const double got = semiclassical_defect(delta(kZ2, {1, 0}), delta(kZ2, {0, 1}), gamma, hbar, 4,
                                            options.bracket_scale);
    worst = std::max(worst, std::abs(got - want));
  }
  out.at_most("closed-form gap", worst, kClosedFormTol);
}

void iterated_deformation(const SuiteOptions&, Rng& rng, Ledger& out) {
  double iterated = 0.0;
  double undeform = 0.0;
  bool exact = true;
  for (int trial = 0; trial < 50; ++trial) {
    const auto s1 = sampling::random_lattice_cocycle(kZ2, rng);
    const auto s2 = sampling::random_lattice_cocycle(kZ2, rng);
    const auto a = sampling::random_element(kZ2, rng);
    const auto b = sampling::random_element(kZ2, rng);
    iterated = std::max(iterated, iterated_star_check(a, b, s1, s2));
    const auto cancelled = compose_cocycles(s1, s1.conjugate());
    exact = exact && cancelled.is_trivial() && star(a, b, cancelled) == convolve(a, b);
    undeform = std::max(undeform, l1_distance(iterated_star(a, b, s1, s1.conjugate()), convolve(a, b)));
  }
  out.at_most("sigma1 then sigma2 vs sum", iterated, kIteratedTol);
  out.require("conjugate cancels exactly", exact);
  out.at_most("iterated undeformation", undeform, kIteratedTol);
}

void translation_automorphisms(const SuiteOptions&, Rng& rng, Ledger& out) {
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto sigma = sampling::random_lattice_cocycle(kZ2, rng);
    const auto a = sampling::random_element(kZ2, rng);
    const auto b = sampling::random_element(kZ2, rng);
    const auto v = sampling::random_torus_point(2, rng);
    worst = std::max(worst, automorphism_check(a, b, sigma, v));
  }
  out.at_most("max l1 deviation", worst, kTranslationTol);
}

void kasprzak_equivalence(const SuiteOptions&, Rng& rng, Ledger& out) {
  for (const auto& [n, b] : std::array<std::pair<std::int64_t, std::int64_t>, 2>{{{5, 1}, {7, 3}}}) {
    const auto ctx = GroupContext::finite({n});
    const auto data = DeformedActionData::make(Bicharacter::finite(ctx, IntMatrix::Constant(1, 1, b)));
    double hom = 0.0;
    double idem = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = spectral_project(sampling::random_crossed(ctx, rng), data);
      const auto y = spectral_project(sampling::random_crossed(ctx, rng), data);
      hom = std::max(hom, verify_I_homomorphism(x, y, data));
      idem = std::max(idem, max_abs_diff(spectral_project(x, data), x));
    }
    const std::string tag = "Z/" + std::to_string(n);
    out.at_most(tag + " I(ab) vs I(a)I(b)", hom, kHomomorphismTol);
    out.at_most(tag + " idempotence", idem, kIdempotenceTol);
    const auto dim = fixed_point_dimension(data);
    out.require(tag + " dim " + std::to_string(dim) + " == " + std::to_string(ctx.order()), dim == ctx.order());
  }
}

void rieffel_duality(const SuiteOptions&, Rng& rng, Ledger& out) {
  const std::vector<GroupContext> contexts = {GroupContext::finite({5}), GroupContext::finite({7}),
                                              GroupContext::finite({3, 3}), GroupContext::finite({5, 5})};
  for (const auto& ctx : contexts) {
    const auto sigma = sampling::random_finite_cocycle(ctx, rng);
    const auto e = standard_pairing(ctx);
    const auto t = rieffel_dual_map(sigma, e);
    const double root = std::sqrt(static_cast<double>(ctx.order()));
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = sampling::random_vector(ctx, rng);
      const auto g = sampling::random_vector(ctx, rng);
      const auto lhs = fourier(to_finite_vector(star(from_finite_vector(f), from_finite_vector(g), sigma)));
      const auto rhs = root * rieffel_product_finite(fourier(f), fourier(g), e, t);
      worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
    std::string tag = "order " + std::to_string(ctx.order());
    out.at_most(tag, worst, kDualityTol);
  }
}

void c0x_linearity(const SuiteOptions&, Rng& rng, Ledger& out) {
  const auto grid = BaseGrid::uniform(Topology::Interval, 7);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    ScalarField f{grid, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) f.values.push_back(sampling::unit_disc(rng));
    const auto a = sampling::random_param(grid, kZ2, rng);
    const auto b = sampling::random_param(grid, kZ2, rng);
    worst = std::max(worst, linearity_check(f, a, b, sampling::random_field(grid, 2, rng)));
  }
  out.at_most("max l1 deviation", worst, kLinearityTol);
}

void heisenberg_field_phase(const SuiteOptions&, Rng&, Ledger& out) {
  constexpr std::size_t kSamples = 32;
  const auto grid = BaseGrid::uniform(Topology::Circle, kSamples);
  for (double hbar : {0.5, 1.0}) {
    const auto field = heisenberg_field(hbar, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex want = std::exp(Complex(0.0, -2.0 * std::numbers::pi * hbar * grid[i]));
      worst = std::max(worst, std::abs(commutation_phase(field, i) - want));
    }
    out.at_most("phase gap hbar=" + format_double(hbar), worst, kPhaseTol);
  }
  bool roots = true;
  double agree = 0.0;
  const auto unit = heisenberg_field(1.0, grid);
  for (std::int64_t q = 1; q <= 32; ++q) {
    for (std::int64_t p = 0; p < q; ++p) {
      const auto phase = heisenberg_phase_exact(p, q);
      roots = roots && (phase * q).is_identity() && q % phase.order() == 0;
      if (kSamples % static_cast<std::size_t>(q) == 0) {
        const auto i = static_cast<std::size_t>(p) * (kSamples / static_cast<std::size_t>(q));
        agree = std::max(agree, std::abs(commutation_phase(unit, i) - phase.value()));
      }
    }
  }
  out.require("y=p/q phase is a q-th root of unity", roots);
  out.at_most("exact vs computed", agree, kPhaseTol);
}

void non_principal_model(const SuiteOptions&, Rng& rng, Ledger& out) {
  IntMatrix shear(2, 2);
  shear << 1, 1, 0, 1;
  IntMatrix stretch(2, 2);
  stretch << 2, 0, 0, 1;
  out.require("accepts [[1,1],[0,1]]", monodromy_check(shear));
  out.require("rejects diag(2,1)", !monodromy_check(stretch));

  const MonodromyData rho(shear);
  const auto grid = BaseGrid::uniform(Topology::Interval, 9);
  std::vector<SkewForm> forms;
  for (double y : grid.samples()) forms.push_back(SkewForm::standard_symplectic(2).scaled(0.3 + y * (1.0 - y)));
  const CocycleField field(grid, forms, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = equivariant_extension(sampling::random_element(kZ2, rng), rho, grid);
    const auto b = equivariant_extension(sampling::random_element(kZ2, rng), rho, grid);
    worst = std::max(worst, equivariant_product_closure(a, b, rho, field));
  }
  out.at_most("closure", worst, kClosureTol);

  IntMatrix rho4 = IntMatrix::Identity(4, 4);
  rho4(2, 0) = 1;
  rho4(3, 1) = 1;
  const MonodromyData lower(rho4);
  const auto z4 = GroupContext::lattice(4);
  RealMatrix g = RealMatrix::Zero(4, 4);
  g(0, 1) = 1.0;
  g(1, 0) = -1.0;
  const auto short_grid = BaseGrid::uniform(Topology::Interval, 3);
  const auto fixed = CocycleField::constant(short_grid, SkewForm(g), 0.5);
  const auto a = equivariant_extension(FourierElement::delta(z4, GroupPoint{0, 0, 1, 0}), lower, short_grid);
  const auto b = equivariant_extension(FourierElement::delta(z4, GroupPoint{0, 0, 0, 1}), lower, short_grid);
  out.at_least("negative control", equivariant_product_closure(a, b, lower, fixed), kControlMin);
}

void norm_oracle(const SuiteOptions&, Rng& rng, Ledger& out) {
  const auto trivial = Bicharacter::trivial(kZ2);
  const auto a = delta(kZ2, {1, 0}) + delta(kZ2, {-1, 0});
  out.at_most("|W64 - 2|", std::abs(op_norm_estimate(a, trivial, Window{64}) - 2.0), kNormTol);
  const std::array<int, 4> windows{8, 16, 32, 64};
  bool monotone = true;
  try {
    const auto rows = norm_convergence(a, trivial, windows);
    for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].estimate >= rows[i - 1].estimate;
  } catch (const NumericFailure&) {
    monotone = false;
  }
  out.require("monotone in W", monotone);
  bool unit = true;
  for (int trial = 0; trial < 20; ++trial) {
    const auto sigma = trial == 0 ? trivial : sampling::random_skew_cocycle(kZ2, rng);
    const auto p = sampling::random_point(kZ2, rng, 6);
    const int radius = static_cast<int>(std::max(std::abs(p[0]), std::abs(p[1])));
    unit = unit && op_norm_estimate(FourierElement::delta(kZ2, p), sigma, Window{radius + 2}) == 1.0;
  }
  out.require("estimate(delta_p) == 1", unit);
}

void automorphy(const SuiteOptions&, Rng& rng, Ledger& out) {
  bool coboundaries = true;
  bool u_identity = true;
  int solved = 0;
  for (const auto& act : fixtures::action_zoo()) {
    std::vector<Complex> vals(act.group_order() * act.points());
    for (auto& z : vals) z = unit_phase(static_cast<double>(sampling::uniform_int(rng, 0, 5)) / 6.0);
    const auto tau = coboundary(act, AutomorphyFactor(act, vals));
    coboundaries = coboundaries && tau_cocycle_check(act, tau).passed;
    const auto sol = solve_automorphy(act, tau, 6);
    if (sol.solvable()) {
      ++solved;
      u_identity = u_identity && automorphy_check(act, tau, *sol.factor).passed &&
                   u_cocycle_check(act, tau, u_transform(act, *sol.factor)).passed;
    }
  }
  out.require("coboundaries pass tau_cocycle_check", coboundaries);

  const auto z2 = GammaAction::trivial(GroupTable::cyclic(2), 1);
  TauCocycle tau = TauCocycle::trivial(z2);
  tau.at(1, 1, 0) = -1.0;
  const auto sol = solve_automorphy(z2, tau, 4);
  out.require("Z/2 tau(g,g)=-1 solvable at M=4", sol.solvable());
  if (sol.solvable()) {
    ++solved;
    const auto check = automorphy_check(z2, tau, *sol.factor);
    out.at_most("automorphy_check", check.max_deviation, kAutomorphyTolerance);
    u_identity = u_identity && u_cocycle_check(z2, tau, u_transform(z2, *sol.factor)).passed;
  }
  out.require("u_transform identity on " + std::to_string(solved) + " solved", u_identity);
}

struct Criterion {
  const char* name;
  void (*run)(const SuiteOptions&, Rng&, Ledger&);
};

constexpr std::array<Criterion, kCriterionCount> kCriteria{{
    {"delta-relation", delta_relation},
    {"associativity", associativity},
    {"involution", involution_laws},
    {"semiclassical-limit", semiclassical_limit},
    {"iterated-deformation", iterated_deformation},
    {"translation-automorphisms", translation_automorphisms},
    {"kasprzak-equivalence", kasprzak_equivalence},
    {"rieffel-duality", rieffel_duality},
    {"c0x-linearity", c0x_linearity},
    {"heisenberg-field", heisenberg_field_phase},
    {"non-principal-model", non_principal_model},
    {"norm-oracle", norm_oracle},
    {"automorphy", automorphy},
}};

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) throw ValidationError("criterion id out of range: " + std::to_string(id));
  return kCriteria[static_cast<std::size_t>(id - 1)].name;
}

std::set<int> parse_selection(const std::string& text) {
  std::set<int> ids;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    int id = 0;
    for (int i = 1; i <= kCriterionCount; ++i) {
      if (item == kCriteria[static_cast<std::size_t>(i - 1)].name || item == std::to_string(i)) id = i;
    }
    if (id == 0) throw ValidationError("--only: unknown criterion '" + item + "'");
    ids.insert(id);
  }
  if (ids.empty()) throw ValidationError("--only: empty selection");
  return ids;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() && !options.only.contains(id)) continue;
    const auto& c = kCriteria[static_cast<std::size_t>(id - 1)];
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(id)};
    Rng rng(seq);
    Ledger ledger;
    CriterionResult r{id, c.name, false, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(options, rng, ledger);
      r.passed = ledger.passed();
      r.detail = ledger.detail();
    } catch (const std::exception& e) {
      r.detail = ledger.detail() + (ledger.detail().empty() ? "" : "; ") + "exception: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS " : "FAIL ");
  s.width(2);
  s << r.id << ' ' << r.name << "  " << r.detail;
  return s.str();
}

Json summary_json(const std::vector<CriterionResult>& results, const SuiteOptions& options) {
  Json criteria = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    criteria.push_back(
        Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  return Json{{"seed", options.seed},
              {"bracket_scale", format_double(options.bracket_scale)},
              {"passed", all},
              {"criteria", std::move(criteria)}};
}

}  // namespace nctorus::cli
