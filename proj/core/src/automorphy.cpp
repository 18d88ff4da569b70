#include "nctorus/automorphy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "nctorus/errors.hpp"

namespace nctorus {
namespace {

void require_shape(std::size_t group, std::size_t points, const GammaAction& act, const char* what) {
  if (group != act.group_order() || points != act.points()) {
    throw ContextMismatch(std::string(what) + ": table shape does not match the action");
  }
}

void require_unit(const std::vector<Complex>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(std::abs(values[i]) - 1.0) > 1e-9) {
      throw ValidationError(std::string(what) + ": entry " + std::to_string(i) + " is not of modulus 1");
    }
  }
}

}  // namespace

GroupTable::GroupTable(std::vector<std::vector<std::size_t>> mul) : mul_(std::move(mul)) {
  const std::size_t n = mul_.size();
  if (n == 0) throw ValidationError("group table: empty");
  for (std::size_t a = 0; a < n; ++a) {
    if (mul_[a].size() != n) throw ValidationError("group table: row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      if (mul_[a][b] >= n) throw ValidationError("group table: entry out of range");
    }
  }
  auto is_identity = [&](std::size_t e) {
    for (std::size_t a = 0; a < n; ++a) {
      if (mul_[e][a] != a || mul_[a][e] != a) return false;
    }
    return true;
  };
  std::size_t e = 0;
  while (e < n && !is_identity(e)) ++e;
  if (e == n) throw ValidationError("group table: no identity element");
  identity_ = e;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw ValidationError("group table: not associative");
      }
    }
  }
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (mul_[a][b] == e && mul_[b][a] == e) inverse_[a] = b;
    }
    if (inverse_[a] == n) throw ValidationError("group table: element " + std::to_string(a) + " has no inverse");
  }
}

GroupTable GroupTable::cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  }
  return GroupTable(std::move(mul));
}

GammaAction::GammaAction(GroupTable group, std::vector<std::vector<std::size_t>> act)
    : group_(std::move(group)), act_(std::move(act)) {
  if (act_.size() != group_.order()) throw ValidationError("action: one row per group element required");
  points_ = act_.front().size();
  if (points_ == 0) throw ValidationError("action: empty space");
  for (std::size_t k = 0; k < act_.size(); ++k) {
    if (act_[k].size() != points_) throw ValidationError("action: row " + std::to_string(k) + " has wrong length");
    for (std::size_t x : act_[k]) {
      if (x >= points_) throw ValidationError("action: entry out of range");
    }
  }
  for (std::size_t x = 0; x < points_; ++x) {
    if (act_[group_.identity()][x] != x) throw ValidationError("action: identity does not act trivially");
  }
  for (std::size_t a = 0; a < group_.order(); ++a) {
    for (std::size_t b = 0; b < group_.order(); ++b) {
      for (std::size_t x = 0; x < points_; ++x) {
        if (act_[group_.mul(a, b)][x] != act_[a][act_[b][x]]) throw ValidationError("action: not compatible with the product");
      }
    }
  }
}

GammaAction GammaAction::trivial(GroupTable group, std::size_t points) {
  std::vector<std::size_t> row(points);
  std::iota(row.begin(), row.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> act(group.order(), row);
  return GammaAction(std::move(group), std::move(act));
}

TauCocycle::TauCocycle(const GammaAction& act, std::vector<Complex> values)
    : group_(act.group_order()), points_(act.points()), values_(std::move(values)) {
  if (values_.size() != group_ * group_ * points_) {
    throw ValidationError("tau: expected " + std::to_string(group_ * group_ * points_) + " entries");
  }
  require_unit(values_, "tau");
}

TauCocycle TauCocycle::trivial(const GammaAction& act) {
  return TauCocycle(act, std::vector<Complex>(act.group_order() * act.group_order() * act.points(), 1.0));
}

AutomorphyFactor::AutomorphyFactor(const GammaAction& act, std::vector<Complex> values)
    : group_(act.group_order()), points_(act.points()), values_(std::move(values)) {
  if (values_.size() != group_ * points_) {
    throw ValidationError("automorphy factor: expected " + std::to_string(group_ * points_) + " entries");
  }
  require_unit(values_, "automorphy factor");
}

AutomorphyFactor AutomorphyFactor::trivial(const GammaAction& act) {
  return AutomorphyFactor(act, std::vector<Complex>(act.group_order() * act.points(), 1.0));
}

CheckReport tau_cocycle_check(const GammaAction& act, const TauCocycle& tau, double tolerance) {
  require_shape(tau.group_order(), tau.points(), act, "tau_cocycle_check");
  const auto& g = act.group();
  double worst = 0.0;
  for (std::size_t k1 = 0; k1 < g.order(); ++k1) {
    for (std::size_t k2 = 0; k2 < g.order(); ++k2) {
      for (std::size_t k3 = 0; k3 < g.order(); ++k3) {
        for (std::size_t x = 0; x < act.points(); ++x) {
          const Complex lhs = tau(g.mul(k1, k2), k3, x) * tau(k1, k2, act.apply(k3, x));
          const Complex rhs = tau(k1, g.mul(k2, k3), x) * tau(k2, k3, x);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return {worst <= tolerance, worst};
}

CheckReport automorphy_check(const GammaAction& act, const TauCocycle& tau, const AutomorphyFactor& j,
                             double tolerance) {
  require_shape(tau.group_order(), tau.points(), act, "automorphy_check");
  require_shape(j.group_order(), j.points(), act, "automorphy_check");
  const auto& g = act.group();
  double worst = 0.0;
  for (std::size_t k1 = 0; k1 < g.order(); ++k1) {
    for (std::size_t k2 = 0; k2 < g.order(); ++k2) {
      for (std::size_t x = 0; x < act.points(); ++x) {
        const Complex lhs = j(k1, act.apply(k2, x)) * j(k2, x);
        const Complex rhs = tau(k1, k2, x) * j(g.mul(k1, k2), x);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return {worst <= tolerance, worst};
}

TauCocycle coboundary(const GammaAction& act, const AutomorphyFactor& j) {
  require_shape(j.group_order(), j.points(), act, "coboundary");
  const auto& g = act.group();
  TauCocycle tau = TauCocycle::trivial(act);
  for (std::size_t k1 = 0; k1 < g.order(); ++k1) {
    for (std::size_t k2 = 0; k2 < g.order(); ++k2) {
      for (std::size_t x = 0; x < act.points(); ++x) {
        tau.at(k1, k2, x) = j(k1, act.apply(k2, x)) * j(k2, x) / j(g.mul(k1, k2), x);
      }
    }
  }
  return tau;
}

std::vector<std::int64_t> tau_exponents(const TauCocycle& tau, std::int64_t m) {
  if (m <= 0) throw ValidationError("tau_exponents: modulus must be positive");
  std::vector<std::int64_t> t;
  t.reserve(tau.values().size());
  for (std::size_t i = 0; i < tau.values().size(); ++i) {
    const Complex z = tau.values()[i];
    const double turns = std::arg(z) / (2.0 * std::numbers::pi);
    const auto e = modular::reduce(static_cast<std::int64_t>(std::llround(turns * static_cast<double>(m))), m);
    if (std::abs(z - unit_phase(static_cast<double>(e) / static_cast<double>(m))) > 1e-9) {
      throw ValidationError("tau: entry " + std::to_string(i) + " is not a root of unity of order " + std::to_string(m));
    }
    t.push_back(e);
  }
  return t;
}

namespace modular {
namespace {

// g = s a + t b with g = gcd(a, b) >= 0; (s, t) = (1, 0) whenever a divides b.
std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  if (a != 0 && b % a == 0) return {a, 1, 0};
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  return {old_r, old_s, old_t};
}

}  // namespace

Diagonalisation diagonalise(std::vector<std::vector<std::int64_t>> a, std::vector<std::int64_t> b, std::int64_t m) {
  if (m <= 0) throw ValidationError("diagonalise: modulus must be positive");
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  if (b.size() != rows) throw ValidationError("diagonalise: right-hand side has wrong length");
  for (auto& row : a) {
    if (row.size() != cols) throw ValidationError("diagonalise: ragged matrix");
    for (auto& v : row) v = reduce(v, m);
  }
  for (auto& v : b) v = reduce(v, m);

  std::vector<std::vector<std::int64_t>> v(cols, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = reduce(1, m);

  // Unimodular 2x2 combination [[s, t], [-y, x]] applied to the pair (p, q).
  auto combine = [m](std::int64_t& p, std::int64_t& q, std::int64_t s, std::int64_t t, std::int64_t x, std::int64_t y) {
    const std::int64_t np = reduce(mul(s, p, m) + mul(t, q, m), m);
    const std::int64_t nq = reduce(mul(x, q, m) - mul(y, p, m), m);
    p = np;
    q = nq;
  };
  auto row_op = [&](std::size_t r1, std::size_t r2, std::size_t c) {
    const auto [g, s, t] = ext_gcd(a[r1][c], a[r2][c]);
    const std::int64_t x = a[r1][c] / g, y = a[r2][c] / g;
    for (std::size_t j = 0; j < cols; ++j) combine(a[r1][j], a[r2][j], s, t, x, y);
    combine(b[r1], b[r2], s, t, x, y);
  };
  auto col_op = [&](std::size_t c1, std::size_t c2, std::size_t r) {
    const auto [g, s, t] = ext_gcd(a[r][c1], a[r][c2]);
    const std::int64_t x = a[r][c1] / g, y = a[r][c2] / g;
    for (std::size_t i = 0; i < rows; ++i) combine(a[i][c1], a[i][c2], s, t, x, y);
    for (std::size_t i = 0; i < cols; ++i) combine(v[i][c1], v[i][c2], s, t, x, y);
  };

  const std::size_t steps = std::min(rows, cols);
  Diagonalisation out;
  out.diagonal.assign(steps, 0);
  for (std::size_t p = 0; p < steps; ++p) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = p; i < rows && pr == rows; ++i) {
      for (std::size_t j = p; j < cols; ++j) {
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr == rows) break;
    if (pr != p) {
      std::swap(a[pr], a[p]);
      std::swap(b[pr], b[p]);
    }
    if (pc != p) {
      for (auto& row : a) std::swap(row[pc], row[p]);
      for (auto& row : v) std::swap(row[pc], row[p]);
    }
    for (bool dirty = true; dirty;) {
      dirty = false;
      for (std::size_t i = p + 1; i < rows; ++i) {
        if (a[i][p] != 0) row_op(p, i, p);
      }
      for (std::size_t j = p + 1; j < cols; ++j) {
        if (a[p][j] != 0) col_op(p, j, p);
      }
      for (std::size_t i = p + 1; i < rows; ++i) dirty = dirty || a[i][p] != 0;
    }
    out.diagonal[p] = a[p][p];
  }
  out.column = std::move(v);
  out.rhs = std::move(b);
  return out;
}

std::optional<std::vector<std::int64_t>> solve_linear(const std::vector<std::vector<std::int64_t>>& a,
                                                      const std::vector<std::int64_t>& b, std::int64_t m) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  const Diagonalisation d = diagonalise(a, b, m);
  std::vector<std::int64_t> y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int64_t c = d.rhs[i];
    const std::int64_t di = i < d.diagonal.size() ? d.diagonal[i] : 0;
    const std::int64_t g = std::gcd(di, m);
    if (c % g != 0) return std::nullopt;
    if (di == 0) continue;
    const std::int64_t mg = m / g;
    y[i] = mg == 1 ? 0 : mul(c / g, *inverse(di / g, mg), mg);
  }
  std::vector<std::int64_t> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < cols; ++j) acc = reduce(acc + mul(d.column[i][j], y[j], m), m);
    x[i] = acc;
  }
  return x;
}

}  // namespace modular

AutomorphySolution solve_automorphy(const GammaAction& act, const TauCocycle& tau, std::int64_t m) {
  require_shape(tau.group_order(), tau.points(), act, "solve_automorphy");
  const auto t = tau_exponents(tau, m);
  if (!tau_cocycle_check(act, tau, 1e-9).passed) throw PreconditionError("solve_automorphy: tau is not a cocycle");

  const auto& g = act.group();
  const std::size_t n = g.order(), xs = act.points();
  const std::size_t unknowns = n * xs;
  std::vector<std::vector<std::int64_t>> a;
  std::vector<std::int64_t> rhs;
  a.reserve(n * n * xs);
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      for (std::size_t x = 0; x < xs; ++x) {
        std::vector<std::int64_t> row(unknowns, 0);
        row[k1 * xs + act.apply(k2, x)] += 1;
        row[k2 * xs + x] += 1;
        row[g.mul(k1, k2) * xs + x] -= 1;
        a.push_back(std::move(row));
        rhs.push_back(t[(k1 * n + k2) * xs + x]);
      }
    }
  }

  AutomorphySolution out;
  out.modulus = m;
  auto s = modular::solve_linear(a, rhs, m);
  if (!s) return out;
  std::vector<Complex> values;
  values.reserve(unknowns);
  for (std::int64_t e : *s) values.push_back(unit_phase(static_cast<double>(e) / static_cast<double>(m)));
  AutomorphyFactor j(act, std::move(values));
  if (!automorphy_check(act, tau, j, 1e-9).passed) {
    throw NumericFailure("solve_automorphy: modular solution fails the automorphy identity");
  }
  out.exponents = std::move(s);
  out.factor = std::move(j);
  return out;
}

AutomorphyFactor u_transform(const GammaAction& act, const AutomorphyFactor& j) {
  require_shape(j.group_order(), j.points(), act, "u_transform");
  const auto& g = act.group();
  AutomorphyFactor u = AutomorphyFactor::trivial(act);
  for (std::size_t k = 0; k < g.order(); ++k) {
    for (std::size_t x = 0; x < act.points(); ++x) u.at(k, x) = j(k, act.apply(g.inverse(k), x));
  }
  return u;
}

CheckReport u_cocycle_check(const GammaAction& act, const TauCocycle& tau, const AutomorphyFactor& u,
                            double tolerance) {
  require_shape(tau.group_order(), tau.points(), act, "u_cocycle_check");
  require_shape(u.group_order(), u.points(), act, "u_cocycle_check");
  const auto& g = act.group();
  double worst = 0.0;
  for (std::size_t k1 = 0; k1 < g.order(); ++k1) {
    for (std::size_t k2 = 0; k2 < g.order(); ++k2) {
      const std::size_t k12 = g.mul(k1, k2);
      for (std::size_t x = 0; x < act.points(); ++x) {
        const Complex lhs = u(k1, x) * u(k2, act.apply(g.inverse(k1), x));
        const Complex rhs = tau(k1, k2, act.apply(g.inverse(k12), x)) * u(k12, x);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return {worst <= tolerance, worst};
}

}  // namespace nctorus
