#pragma once

#include <vector>

#include "complex_matrix.hpp"

namespace specnorm {

// QR iteration ran out of its step budget. The partial factors are carried
// so callers can inspect how far deflation got.
class QrNoConvergenceError : public NoConvergenceError {
 public:
  QrNoConvergenceError(std::string what, ComplexMatrix partial_u_,
                       ComplexMatrix partial_delta_)
      : NoConvergenceError(std::move(what)),
        partial_u(std::move(partial_u_)),
        partial_delta(std::move(partial_delta_)) {}

  ComplexMatrix partial_u;
  ComplexMatrix partial_delta;
};

struct HessenbergResult {
  ComplexMatrix q;  // unitary, a = q * h * q^H
  ComplexMatrix h;  // upper Hessenberg, exact zeros below the subdiagonal
};

HessenbergResult hessenberg_reduce(const ComplexMatrix& a);

// Unitary similarity to upper triangular form, stored in the convention
// a = u^H * delta * u (equivalently delta = u * a * u^H). Complex
// triangular form throughout: real inputs with complex spectra take the
// same code path as everything else.
struct SchurDecomposition {
  ComplexMatrix u;
  ComplexMatrix delta;
  double residual = 0.0;          // ||a - u^H delta u||_F / max(1, ||a||_F)
  double unitarity_defect = 0.0;  // ||u u^H - I||_F
};

// tol <= 0 selects the default deflation threshold 1e-12 * ||a||_F.
// max_sweeps bounds the QR iterations spent per eigenvalue; the total
// step budget is max_sweeps * n^2.
SchurDecomposition schur_decompose(const ComplexMatrix& a, double tol = 0.0,
                                   int max_sweeps = 30);

struct Spectrum {
  std::vector<cplx> eigenvalues;  // diagonal of delta, in deflation order
  double rho = 0.0;               // max eigenvalue magnitude
};

Spectrum eigenvalues(const ComplexMatrix& a);

}  // namespace specnorm
