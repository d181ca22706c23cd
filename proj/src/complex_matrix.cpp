#include "complex_matrix.hpp"

#include <cmath>
#include <utility>

namespace specnorm {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_dim(int n) {
  if (n < 1) throw InvalidArgumentError("matrix dimension must be >= 1");
}

}  // namespace

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
  check_dim(n);
  e_.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(int n, std::vector<cplx> entries)
    : n_(n), e_(std::move(entries)) {
  check_dim(n);
  if (e_.size() != static_cast<std::size_t>(n) * n)
    throw InvalidArgumentError("entry count does not match dimension");
  if (!all_finite()) throw NonFiniteError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  if (!m.all_finite()) throw NonFiniteError("diagonal entries must be finite");
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& z : e_)
    if (!finite(z)) return false;
  return true;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("mat_mul: dimensions differ");
  const int n = a.dim();
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("mat_add: dimensions differ");
  ComplexMatrix c = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) += b(i, j);
  return c;
}

ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("mat_sub: dimensions differ");
  ComplexMatrix c = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) -= b(i, j);
  return c;
}

ComplexMatrix mat_scale(const ComplexMatrix& a, cplx s) {
  ComplexMatrix c = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) *= s;
  return c;
}

ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& x) {
  if (x.size() != static_cast<std::size_t>(a.dim()))
    throw DimensionMismatchError("mat_vec: dimensions differ");
  const int n = a.dim();
  ComplexVector y(static_cast<std::size_t>(n), cplx{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) acc += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

double vec_norm2(const ComplexVector& x) {
  double s = 0.0;
  for (const cplx& z : x) s += std::norm(z);
  return std::sqrt(s);
}

void ensure_finite(const ComplexMatrix& m, const char* what) {
  if (!m.all_finite())
    throw NonFiniteError(std::string(what) + ": non-finite entry");
}

void ensure_finite(const ComplexVector& v, const char* what) {
  for (const cplx& z : v)
    if (!finite(z))
      throw NonFiniteError(std::string(what) + ": non-finite entry");
}

}  // namespace specnorm
