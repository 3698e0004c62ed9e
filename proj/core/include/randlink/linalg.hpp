#pragma once

#include <string_view>

#include "randlink/matrix.hpp"

namespace randlink {

enum class RidgeMode { Auto, Primal, Dual, Pseudoinverse };

RidgeMode parse_ridge_mode(std::string_view name);
std::string_view ridge_mode_name(RidgeMode m);

/// Minimizer of ||D beta - Y||^2 + lambda ||beta||^2.
/// Auto picks the smaller normal-equation system: primal
/// (D^T D + lambda I) when cols <= rows, dual D^T (D D^T + lambda I)^{-1} Y
/// otherwise. lambda must be > 0 unless mode is Pseudoinverse.
DenseMatrix ridge_solve(const DenseMatrix& D, const DenseMatrix& Y, double lambda,
                        RidgeMode mode = RidgeMode::Auto);

/// Minimum-norm least squares via thin SVD; singular values below
/// max(rows, cols) * sigma_max * 1e-12 are treated as zero.
DenseMatrix pinv_solve(const DenseMatrix& D, const DenseMatrix& Y);

/// Largest singular value estimated with `iterations` rounds of power
/// iteration on A^T A (deterministic start vector).
double spectral_norm_estimate(const DenseMatrix& A, int iterations = 50);

} // namespace randlink
