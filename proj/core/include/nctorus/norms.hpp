#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "nctorus/deform.hpp"

namespace nctorus {

/// Coefficient window: the box max_j |p_j| <= radius in Z^n.
struct Window {
  int radius = 0;
};

/// Row-major enumeration of the points of a window box.
class WindowIndex {
 public:
  WindowIndex(int rank, Window window);

  std::size_t size() const { return size_; }
  int rank() const { return rank_; }
  Window window() const { return window_; }
  std::optional<std::size_t> index_of(const GroupPoint& p) const;
  GroupPoint point_at(std::size_t index) const;

 private:
  int rank_;
  Window window_;
  std::size_t side_;
  std::size_t size_;
};

using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseVector = Eigen::VectorXcd;

/// Compression of b -> a * b to the window: entry (p + r, r) = a(p) sigma(p, r).
/// Throws ValidationError when the window is smaller than a's support radius.
DenseMatrix left_mult_matrix(const FourierElement& a, const Bicharacter& sigma, Window window);
SparseMatrix left_mult_operator(const FourierElement& a, const Bicharacter& sigma, Window window);

enum class NormMethod { Zero, Monomial, Dense, PowerIteration };

struct NormOptions {
  /// Matrices up to this dimension go through a dense Hermitian eigensolve.
  std::size_t dense_limit = 441;
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

struct NormEstimate {
  double value = 0.0;
  Window window;
  NormMethod method = NormMethod::Zero;
  int iterations = 0;
  /// Unit vector (in window coordinates) attaining `value`; seeds larger windows.
  DenseVector top_vector;
};

/// Largest singular value of the window matrix: a lower bound for the deformed
/// operator norm. Power iteration failures throw NumericFailure.
NormEstimate estimate_norm(const FourierElement& a, const Bicharacter& sigma, Window window,
                           const NormOptions& options = {}, const DenseVector* warm_start = nullptr);

double op_norm_estimate(const FourierElement& a, const Bicharacter& sigma, Window window);

/// Re-express a window vector in a larger window's coordinates.
DenseVector embed_window_vector(const DenseVector& v, const WindowIndex& from, const WindowIndex& to);

struct NormRow {
  int window = 0;
  double estimate = 0.0;
};

/// Estimates for increasing windows, each seeded from the previous top vector.
/// Throws NumericFailure if the column is not nondecreasing (slack 1e-12).
std::vector<NormRow> norm_convergence(const FourierElement& a, const Bicharacter& sigma,
                                      std::span<const int> windows, const NormOptions& options = {});

struct ScanRow {
  double hbar = 0.0;
  double norm = 0.0;
};

struct ContinuityScan {
  std::vector<ScanRow> rows;  // sorted by hbar
  /// max |norm_{k+1} - norm_k| / (hbar_{k+1} - hbar_k) over adjacent rows.
  double max_slope = 0.0;
};

/// || a *_hbar b ||_W for each hbar, with sigma_hbar built from gamma.
ContinuityScan field_continuity_scan(const FourierElement& a, const FourierElement& b, const SkewForm& gamma,
                                     std::span<const double> hbars, Window window);

}  // namespace nctorus
