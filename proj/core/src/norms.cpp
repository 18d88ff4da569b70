#include "nctorus/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "nctorus/errors.hpp"

namespace nctorus {
namespace {

void require_window(const FourierElement& a, const Bicharacter& sigma, Window window) {
  if (!(a.context() == sigma.context())) throw ContextMismatch("norm: element and cocycle contexts differ");
  if (!a.context().is_lattice()) throw ValidationError("norm: windows are defined for lattice contexts");
  if (window.radius < 0) throw ValidationError("norm: window radius must be nonnegative");
  if (a.support_radius() > window.radius) {
    throw ValidationError("norm: window " + std::to_string(window.radius) +
                          " is smaller than the support radius " + std::to_string(a.support_radius()));
  }
}

DenseVector random_unit_vector(std::size_t n) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  DenseVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Unit vector for the top eigenvalue of a Hermitian PSD matrix, by inverse
/// iteration just above the known eigenvalue.
DenseVector top_eigenvector(const DenseMatrix& gram, double top) {
  const Eigen::Index n = gram.rows();
  if (top <= 0.0) {
    DenseVector e = DenseVector::Zero(n);
    e(0) = 1.0;
    return e;
  }
  const double shift = top * (1.0 + 1e-10);
  const Eigen::LDLT<DenseMatrix> ldlt(shift * DenseMatrix::Identity(n, n) - gram);
  DenseVector x = random_unit_vector(static_cast<std::size_t>(n));
  for (int it = 0; it < 3; ++it) {
    x = ldlt.solve(x);
    x /= x.norm();
  }
  return x;
}

/// Largest dense-solvable window strictly inside `window` that still holds a's support; -1 if none.
int seed_radius(const FourierElement& a, Window window, const NormOptions& options) {
  const int rank = a.context().rank();
  int best = -1;
  for (int r = static_cast<int>(a.support_radius()); r < window.radius; ++r) {
    if (WindowIndex(rank, Window{r}).size() > options.dense_limit) break;
    best = r;
  }
  return best;
}

}  // namespace

WindowIndex::WindowIndex(int rank, Window window)
    : rank_(rank), window_(window), side_(static_cast<std::size_t>(2 * window.radius + 1)), size_(1) {
  if (rank < 1 || window.radius < 0) throw ValidationError("window index: invalid rank or radius");
  for (int i = 0; i < rank; ++i) size_ *= side_;
}

std::optional<std::size_t> WindowIndex::index_of(const GroupPoint& p) const {
  std::size_t idx = 0;
  for (auto x : p.coords) {
    if (x < -window_.radius || x > window_.radius) return std::nullopt;
    idx = idx * side_ + static_cast<std::size_t>(x + window_.radius);
  }
  return idx;
}

GroupPoint WindowIndex::point_at(std::size_t index) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(rank_));
  for (std::size_t j = c.size(); j-- > 0;) {
    c[j] = static_cast<std::int64_t>(index % side_) - window_.radius;
    index /= side_;
  }
  return GroupPoint(std::move(c));
}

SparseMatrix left_mult_operator(const FourierElement& a, const Bicharacter& sigma, Window window) {
  require_window(a, sigma, window);
  const auto& ctx = a.context();
  const WindowIndex idx(ctx.rank(), window);
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(idx.size() * a.support_size());
  for (std::size_t col = 0; col < idx.size(); ++col) {
    const GroupPoint r = idx.point_at(col);
    for (const auto& [p, c] : a.coeffs()) {
      if (auto row = idx.index_of(ctx.add(p, r))) {
        entries.emplace_back(static_cast<int>(*row), static_cast<int>(col), c * sigma(p, r));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(idx.size());
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

DenseMatrix left_mult_matrix(const FourierElement& a, const Bicharacter& sigma, Window window) {
  return DenseMatrix(left_mult_operator(a, sigma, window));
}

DenseVector embed_window_vector(const DenseVector& v, const WindowIndex& from, const WindowIndex& to) {
  if (static_cast<std::size_t>(v.size()) != from.size() || from.rank() != to.rank()) {
    throw ValidationError("embed_window_vector: vector does not match its window");
  }
  DenseVector out = DenseVector::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (auto j = to.index_of(from.point_at(i))) out(static_cast<Eigen::Index>(*j)) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

NormEstimate estimate_norm(const FourierElement& a, const Bicharacter& sigma, Window window,
                           const NormOptions& options, const DenseVector* warm_start) {
  require_window(a, sigma, window);
  const WindowIndex idx(a.context().rank(), window);
  const auto n = static_cast<Eigen::Index>(idx.size());
  NormEstimate est;
  est.window = window;

  if (a.empty()) {
    est.top_vector = DenseVector::Zero(n);
    return est;
  }

  if (a.support_size() == 1) {
    // One nonzero per column, distinct rows, unimodular phases: the matrix is
    // |c| times a partial isometry, and the column at r = 0 is always kept.
    est.method = NormMethod::Monomial;
    est.value = std::abs(a.coeffs().begin()->second);
    est.top_vector = DenseVector::Zero(n);
    est.top_vector(static_cast<Eigen::Index>(*idx.index_of(a.context().zero()))) = 1.0;
    return est;
  }

  const SparseMatrix m = left_mult_operator(a, sigma, window);

  if (idx.size() <= options.dense_limit) {
    est.method = NormMethod::Dense;
    const DenseMatrix dense(m);
    const DenseMatrix gram = dense.adjoint() * dense;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericFailure("norm: dense eigensolver failed");
    const double top = std::max(0.0, solver.eigenvalues()(n - 1));
    est.value = std::sqrt(top);
    est.top_vector = top_eigenvector(gram, top);
    return est;
  }

  est.method = NormMethod::PowerIteration;
  DenseVector x;
  if (warm_start != nullptr && warm_start->size() == n && warm_start->norm() > 0.0) {
    x = *warm_start / warm_start->norm();
  } else if (const int r = seed_radius(a, window, options); r >= 0) {
    const WindowIndex seed_idx(a.context().rank(), Window{r});
    x = embed_window_vector(estimate_norm(a, sigma, Window{r}, options).top_vector, seed_idx, idx);
  } else {
    x = random_unit_vector(idx.size());
  }
  const SparseMatrix m_adj = m.adjoint();
  double previous = -1.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const DenseVector z = m_adj * (m * x);
    const double rayleigh = std::max(0.0, x.dot(z).real());
    const double zn = z.norm();
    if (zn == 0.0) {
      est.value = 0.0;
      est.iterations = it;
      est.top_vector = x;
      return est;
    }
    if (previous >= 0.0 && std::abs(rayleigh - previous) <= options.tolerance * rayleigh) {
      est.value = std::sqrt(rayleigh);
      est.iterations = it;
      est.top_vector = x;
      return est;
    }
    previous = rayleigh;
    x = z / zn;
  }
  throw NumericFailure("norm: power iteration did not converge within " +
                       std::to_string(options.max_iterations) + " iterations");
}

double op_norm_estimate(const FourierElement& a, const Bicharacter& sigma, Window window) {
  return estimate_norm(a, sigma, window).value;
}

std::vector<NormRow> norm_convergence(const FourierElement& a, const Bicharacter& sigma,
                                      std::span<const int> windows, const NormOptions& options) {
  if (windows.empty()) throw ValidationError("norm_convergence: empty window list");
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (windows[i] <= windows[i - 1]) throw ValidationError("norm_convergence: windows must be strictly increasing");
  }
  std::vector<NormRow> rows;
  std::optional<NormEstimate> previous;
  for (int w : windows) {
    const Window window{w};
    NormEstimate est;
    if (previous) {
      const WindowIndex from(a.context().rank(), previous->window);
      const WindowIndex to(a.context().rank(), window);
      const DenseVector seed = embed_window_vector(previous->top_vector, from, to);
      est = estimate_norm(a, sigma, window, options, &seed);
      if (est.value < previous->value - 1e-12) {
        throw NumericFailure("norm_convergence: estimate decreased from window " +
                             std::to_string(previous->window.radius) + " to " + std::to_string(w));
      }
    } else {
      est = estimate_norm(a, sigma, window, options);
    }
    rows.push_back({w, est.value});
    previous = std::move(est);
  }
  return rows;
}

ContinuityScan field_continuity_scan(const FourierElement& a, const FourierElement& b, const SkewForm& gamma,
                                     std::span<const double> hbars, Window window) {
  if (hbars.empty()) throw ValidationError("field_continuity_scan: empty hbar list");
  std::vector<double> sorted(hbars.begin(), hbars.end());
  std::sort(sorted.begin(), sorted.end());
  ContinuityScan scan;
  for (double h : sorted) {
    const Bicharacter sigma = Bicharacter::from_form(a.context(), gamma, h);
    scan.rows.push_back({h, op_norm_estimate(star(a, b, sigma), sigma, window)});
  }
  for (std::size_t k = 1; k < scan.rows.size(); ++k) {
    const double dh = scan.rows[k].hbar - scan.rows[k - 1].hbar;
    if (dh <= 0.0) continue;
    scan.max_slope = std::max(scan.max_slope, std::abs(scan.rows[k].norm - scan.rows[k - 1].norm) / dh);
  }
  return scan;
}

}  // namespace nctorus
