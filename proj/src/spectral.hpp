#pragma once

#include <vector>

#include "complex_matrix.hpp"

namespace specnorm {

// Dimension at or below which spectral quantities are computed by a full
// one-sided Jacobi SVD; above it, power iteration on A*A is used.
inline constexpr int kSvdDirectLimit = 64;

// One-sided Jacobi SVD of a square matrix. Returns singular values in
// descending order and the matching right singular vectors as columns.
// Jacobi is slow but delivers high relative accuracy even for strongly
// graded inputs, which matters when conditioning information is extracted.
struct SvdResult {
  std::vector<double> singular_values;
  ComplexMatrix right_vectors;
  bool converged = false;
  int sweeps = 0;
};

SvdResult jacobi_svd(const ComplexMatrix& a);

struct SpectralNormResult {
  double value = 0.0;
  bool converged = false;
  long iterations = 0;
};

// Largest singular value. tol is the relative accuracy target for the
// power-iteration path; the direct path is accurate to rounding. On
// non-convergence the best estimate is returned with converged = false.
SpectralNormResult spectral_norm_detail(const ComplexMatrix& a, double tol);
double spectral_norm(const ComplexMatrix& a, double tol = 1e-12);

// Spectral-radius estimate by k repeated squarings:
// ||A^(2^k)||_2^(1/2^k). Each squaring rescales by the Frobenius norm and
// accumulates the scale in log space, so rho far from 1 neither underflows
// nor overflows. Independent of the eigenvalue solver by construction.
double spectral_radius_gelfand(const ComplexMatrix& a, int k);

// sigma_max / sigma_min. Throws SingularMatrixError when the smallest
// singular value is zero to working precision.
double condition_number_2(const ComplexMatrix& a);

}  // namespace specnorm
