#pragma once

#include <complex>
#include <vector>

#include "errors.hpp"

namespace specnorm {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. The universal carrier for every
// matrix-valued quantity in the library. Entries admitted through public
// constructors are checked finite; in-place writes via operator() are not.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  // Zero matrix of dimension n >= 1.
  explicit ComplexMatrix(int n);

  // Row-major entries; throws NonFiniteError on NaN/Inf,
  // InvalidArgumentError on a size mismatch.
  ComplexMatrix(int n, std::vector<cplx> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);

  int dim() const { return n_; }

  cplx& operator()(int i, int j) {
    return e_[static_cast<std::size_t>(i) * n_ + j];
  }
  const cplx& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * n_ + j];
  }

  const std::vector<cplx>& entries() const { return e_; }

  bool all_finite() const;

 private:
  int n_ = 0;
  std::vector<cplx> e_;
};

// Vectors are carried as plain std::vector<cplx>; finiteness is enforced at
// the API boundaries that accept external data.
using ComplexVector = std::vector<cplx>;

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_scale(const ComplexMatrix& a, cplx s);

ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& x);
double vec_norm2(const ComplexVector& x);

// Throws NonFiniteError naming `what` if any entry is NaN/Inf.
void ensure_finite(const ComplexMatrix& m, const char* what);
void ensure_finite(const ComplexVector& v, const char* what);

}  // namespace specnorm
