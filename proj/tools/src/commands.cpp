#include "nctorus/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "nctorus/automorphy.hpp"
#include "nctorus/cli/sampling.hpp"
#include "nctorus/crossed.hpp"
#include "nctorus/deform.hpp"
#include "nctorus/errors.hpp"
#include "nctorus/norms.hpp"
#include "nctorus/paramdeform.hpp"

namespace nctorus::cli {

namespace {

void require_same_context(const FourierElement& a, const FourierElement& b, const char* path) {
  if (a.context() != b.context()) throw ContextMismatch(std::string(path) + ".context: differs from a.context");
}

int positive_int(const Json& config, const char* key, std::int64_t max) {
  const auto v = integer_field(config, "", key);
  if (v < 1 || v > max) {
    throw ValidationError(std::string(key) + ": must be between 1 and " + std::to_string(max) + ", got " +
                          std::to_string(v));
  }
  return static_cast<int>(v);
}

}  // namespace

void cmd_star(const Json& config, const CommandContext&, std::ostream& out) {
  const auto a = parse_element(field(config, "", "a"), "a");
  const auto b = parse_element(field(config, "", "b"), "b");
  require_same_context(a, b, "b");
  const auto sigma = parse_cocycle(field(config, "", "sigma"), a.context(), "sigma");
  out << element_to_json(star(a, b, sigma)).dump(2) << '\n';
}

void cmd_semiclassical(const Json& config, const CommandContext&, std::ostream& out) {
  const auto a = parse_element(field(config, "", "a"), "a");
  const auto b = parse_element(field(config, "", "b"), "b");
  require_same_context(a, b, "b");
  if (!a.context().is_lattice()) throw ValidationError("a.context.mode: semiclassical needs a lattice context");
  const auto gamma = parse_form(field(config, "", "form"), a.context().rank(), "form");
  auto hbars = number_list(field(config, "", "hbar"), "hbar");
  for (std::size_t i = 0; i < hbars.size(); ++i) {
    if (hbars[i] == 0.0) throw ValidationError("hbar[" + std::to_string(i) + "]: must be nonzero");
  }
  const int window = positive_int(config, "window", 64);
  std::sort(hbars.begin(), hbars.end(), std::greater<>());
  std::ostringstream csv;
  csv << "hbar,defect\n";
  for (double h : hbars) {
    csv << format_double(h) << ',' << format_double(semiclassical_defect(a, b, gamma, h, window)) << '\n';
  }
  out << csv.str();
}

void cmd_kasprzak_verify(const Json& config, const CommandContext& cc, std::ostream& out) {
  auto moduli = integer_list(field(config, "", "moduli"), "moduli");
  Json ctx_doc{{"rank", moduli.size()}, {"mode", "finite"}, {"moduli", moduli}};
  const GroupContext ctx = parse_context(ctx_doc, "moduli");
  if (!ctx.uniform_modulus()) throw ValidationError("moduli: must all be equal");
  if (ctx.order() > 4096) throw ValidationError("moduli: group order above 4096");
  const auto sigma = parse_cocycle(Json{{"matrix", field(config, "", "matrix")}}, ctx, "");
  const int trials = config.contains("trials") ? positive_int(config, "trials", 100000) : 50;

  const auto data = DeformedActionData::make(sigma);
  if (!data.t.is_invertible()) throw PreconditionError("matrix: T = sigma^1 o e^1 is singular");

  sampling::Rng rng(cc.seed);
  double worst = 0.0;
  double worst_idempotence = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto a = spectral_project(sampling::random_crossed(ctx, rng), data);
    const auto b = spectral_project(sampling::random_crossed(ctx, rng), data);
    worst = std::max(worst, verify_I_homomorphism(a, b, data));
    worst_idempotence = std::max(worst_idempotence, max_abs_diff(spectral_project(a, data), a));
  }
  const bool passed = worst <= cc.tolerance;
  Json report{{"context", context_to_json(ctx)},
              {"trials", trials},
              {"seed", cc.seed},
              {"max_deviation", format_double(worst)},
              {"projection_idempotence", format_double(worst_idempotence)},
              {"fixed_point_dimension", fixed_point_dimension(data)},
              {"group_order", ctx.order()},
              {"tolerance", format_double(cc.tolerance)},
              {"passed", passed}};
  out << report.dump(2) << '\n';
  if (!passed) throw ToleranceFailure("max deviation " + format_double(worst) + " exceeds tolerance");
}

void cmd_heisenberg(const Json& config, const CommandContext&, std::ostream& out) {
  const auto samples = integer_field(config, "", "samples");
  if (samples < 1 || samples > 1000000) throw ValidationError("samples: must be between 1 and 1000000");
  const double hbar = number_field(config, "", "hbar");
  const auto grid = BaseGrid::uniform(Topology::Circle, static_cast<std::size_t>(samples));
  const auto field = heisenberg_field(hbar, grid);
  std::ostringstream csv;
  csv << "y,re,im\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex phase = commutation_phase(field, i);
    csv << format_double(grid[i]) << ',' << format_double(phase.real()) << ',' << format_double(phase.imag()) << '\n';
  }
  out << csv.str();
}

void cmd_norm(const Json& config, const CommandContext&, std::ostream& out) {
  const auto a = parse_element(field(config, "", "element"), "element");
  if (!a.context().is_lattice()) throw ValidationError("element.context.mode: norm needs a lattice context");
  const auto gamma = parse_form(field(config, "", "form"), a.context().rank(), "form");
  const double hbar = number_field(config, "", "hbar");
  const auto raw = integer_list(field(config, "", "windows"), "windows");
  if (raw.empty()) throw ValidationError("windows: must not be empty");
  std::vector<int> windows;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0 || raw[i] > 256) throw ValidationError("windows[" + std::to_string(i) + "]: must be in [0, 256]");
    if (i > 0 && raw[i] <= raw[i - 1]) throw ValidationError("windows[" + std::to_string(i) + "]: must increase");
    if (raw[i] < a.support_radius()) {
      throw ValidationError("windows[" + std::to_string(i) + "]: smaller than the element's support radius");
    }
    windows.push_back(static_cast<int>(raw[i]));
  }
  const auto sigma = Bicharacter::from_form(a.context(), gamma, hbar);
  const auto rows = norm_convergence(a, sigma, windows);
  std::ostringstream csv;
  csv << "window,estimate\n";
  for (const auto& r : rows) csv << r.window << ',' << format_double(r.estimate) << '\n';
  out << csv.str();
}

namespace {

std::vector<std::vector<std::size_t>> index_table(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array of rows");
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto row = integer_list(j[r], path + "[" + std::to_string(r) + "]");
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] < 0) {
        throw ValidationError(path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]: negative index");
      }
      out.push_back(static_cast<std::size_t>(row[c]));
    }
    table.push_back(std::move(out));
  }
  return table;
}

template <class F>
auto with_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

GroupTable parse_group(const Json& j) {
  if (j.is_number_integer()) {
    const auto n = j.get<std::int64_t>();
    if (n < 1 || n > 64) throw ValidationError("group: cyclic order must be between 1 and 64");
    return GroupTable::cyclic(static_cast<std::size_t>(n));
  }
  auto table = index_table(j, "group");
  return with_path("group", [&] { return GroupTable(std::move(table)); });
}

Json factor_json(const AutomorphyFactor& j) {
  Json values = Json::array();
  for (const Complex z : j.values()) values.push_back(complex_to_json(z));
  return values;
}

}  // namespace

void cmd_automorphy_solve(const Json& config, const CommandContext&, std::ostream& out) {
  GroupTable group = parse_group(field(config, "", "group"));
  const GammaAction act = [&] {
    if (config.contains("action")) {
      auto table = index_table(config["action"], "action");
      return with_path("action", [&] { return GammaAction(group, std::move(table)); });
    }
    const auto points = integer_field(config, "", "points");
    if (points < 1 || points > 64) throw ValidationError("points: must be between 1 and 64");
    return GammaAction::trivial(group, static_cast<std::size_t>(points));
  }();
  const auto m = integer_field(config, "", "modulus");
  if (m < 1 || m > 1000000) throw ValidationError("modulus: must be between 1 and 1000000");

  const std::size_t expected = act.group_order() * act.group_order() * act.points();
  const Json& tau_doc = field(config, "", "tau");
  std::vector<Complex> values;
  if (tau_doc.is_object() && tau_doc.contains("exponents")) {
    const auto k = integer_field(tau_doc, "tau", "modulus");
    if (k < 1) throw ValidationError("tau.modulus: must be positive");
    for (const auto e : integer_list(tau_doc["exponents"], "tau.exponents")) {
      values.push_back(unit_phase(static_cast<double>(((e % k) + k) % k) / static_cast<double>(k)));
    }
  } else {
    const Json& list = tau_doc.is_object() ? field(tau_doc, "tau", "values") : tau_doc;
    if (!list.is_array()) throw ValidationError("tau.values: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) values.push_back(parse_complex(list[i], "tau.values[" + std::to_string(i) + "]"));
  }
  if (values.size() != expected) {
    throw ValidationError("tau: expected " + std::to_string(expected) + " values (|G|^2 |X|), got " +
                          std::to_string(values.size()));
  }
  const TauCocycle tau = with_path("tau", [&] { return TauCocycle(act, std::move(values)); });
  const auto cocycle = tau_cocycle_check(act, tau);
  if (!cocycle.passed) {
    throw PreconditionError("tau: fails the cocycle identity (deviation " + format_double(cocycle.max_deviation) + ")");
  }
  const auto solution = with_path("tau", [&] { return solve_automorphy(act, tau, m); });

  Json report{{"group_order", act.group_order()}, {"points", act.points()}, {"modulus", m},
              {"solvable", solution.solvable()}};
  if (solution.solvable()) {
    const auto check = automorphy_check(act, tau, *solution.factor);
    const auto u = u_transform(act, *solution.factor);
    const auto ucheck = u_cocycle_check(act, tau, u);
    report["exponents"] = *solution.exponents;
    report["factor"] = factor_json(*solution.factor);
    report["automorphy_deviation"] = format_double(check.max_deviation);
    report["u_transform"] = factor_json(u);
    report["u_deviation"] = format_double(ucheck.max_deviation);
    out << report.dump(2) << '\n';
    if (!check.passed || !ucheck.passed) throw ToleranceFailure("solution fails verification");
    return;
  }
  out << report.dump(2) << '\n';
}

int guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kSuccess;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const PreconditionError& e) {
    err << "error: precondition failed: " << e.what() << '\n';
    return kValidation;
  } catch (const ToleranceFailure& e) {
    err << "failure: " << e.what() << '\n';
    return kTolerance;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kNumeric;
  }
}

Json read_document(const std::string& path) {
  if (path.empty() || path == "-") return Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw ValidationError("--input: cannot open '" + path + "'");
  return Json::parse(in);
}

}  // namespace nctorus::cli
