#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "densemble/errors.hpp"

namespace densemble {

// Dense row-major matrix of held-out density evaluations: one row per held-out
// observation, one column per candidate density.
class HeldOutMatrix {
 public:
  HeldOutMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0)
      throw config_error("held-out matrix must be non-empty");
  }

  double& at(std::size_t i, std::size_t m) { return data_[i * cols_ + m]; }
  double at(std::size_t i, std::size_t m) const { return data_[i * cols_ + m]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

struct EmResult {
  std::vector<double> weights;       // convex, one per column
  std::vector<double> loglik_trace;  // objective after each pass, nondecreasing
  std::size_t rows_used = 0;         // rows remaining after dropping all-zero rows
};

// Convex coefficients maximizing sum_i log sum_m a_m A[i,m] by EM:
// E-step r_im = a_m A[i,m] / sum_k a_k A[i,k]; M-step a_m = mean_i r_im.
// All-zero rows carry no information about the weights and are dropped.
inline EmResult em_mixture_weights(const HeldOutMatrix& A, double tol = 1e-8,
                                   int max_iter = 500) {
  if (!(tol > 0.0)) throw config_error("EM tolerance must be positive");
  if (max_iter < 1) throw config_error("EM needs max_iter >= 1");
  const std::size_t cols = A.cols();

  // Keep usable rows, rescaled by their max entry so that per-row sums cannot
  // underflow; the objective gets the scales back as additive constants.
  std::vector<double> scaled;
  double log_scale_total = 0.0;
  std::size_t rows_used = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double row_max = 0.0;
    for (std::size_t m = 0; m < cols; ++m) {
      const double v = A.at(i, m);
      if (!(v >= 0.0) || !std::isfinite(v))
        throw config_error("held-out matrix entries must be finite and nonnegative");
      row_max = std::max(row_max, v);
    }
    if (row_max == 0.0) continue;
    for (std::size_t m = 0; m < cols; ++m) scaled.push_back(A.at(i, m) / row_max);
    log_scale_total += std::log(row_max);
    ++rows_used;
  }
  if (rows_used == 0) throw numeric_error("no usable held-out points");

  EmResult result;
  result.rows_used = rows_used;
  result.weights.assign(cols, 1.0 / static_cast<double>(cols));
  std::vector<double> column_sums(cols);

  double previous = 0.0;
  for (int iter = 0; iter <= max_iter; ++iter) {
    double loglik = log_scale_total;
    std::fill(column_sums.begin(), column_sums.end(), 0.0);
    for (std::size_t i = 0; i < rows_used; ++i) {
      const double* row = &scaled[i * cols];
      double s = 0.0;
      for (std::size_t m = 0; m < cols; ++m) s += result.weights[m] * row[m];
      loglik += std::log(s);
      for (std::size_t m = 0; m < cols; ++m) column_sums[m] += row[m] / s;
    }
    result.loglik_trace.push_back(loglik);
    if (iter > 0 && loglik - previous < tol) break;
    previous = loglik;
    if (iter == max_iter) break;
    for (std::size_t m = 0; m < cols; ++m)
      result.weights[m] *= column_sums[m] / static_cast<double>(rows_used);
  }
  return result;
}

}  // namespace densemble
