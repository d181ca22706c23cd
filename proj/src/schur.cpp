#include "schur.hpp"

#include <algorithm>
#include <cmath>

namespace specnorm {

namespace {

// Complex Givens rotation G = [[c, s], [-conj(s), c]] with real c >= 0 so
// that G * (f, g)^T = (r, 0)^T.
struct Givens {
  double c = 1.0;
  cplx s{0.0, 0.0};
  cplx r{0.0, 0.0};
};

Givens make_givens(cplx f, cplx g) {
  Givens gv;
  if (g == cplx{0.0, 0.0}) {
    gv.c = 1.0;
    gv.s = 0.0;
    gv.r = f;
    return gv;
  }
  if (f == cplx{0.0, 0.0}) {
    gv.c = 0.0;
    gv.s = std::conj(g) / std::abs(g);
    gv.r = std::abs(g);
    return gv;
  }
  const double af = std::abs(f);
  const double norm = std::hypot(af, std::abs(g));
  const cplx fs = f / af;
  gv.c = af / norm;
  gv.s = fs * std::conj(g) / norm;
  gv.r = fs * norm;
  return gv;
}

// Eigenvalue of the trailing 2x2 block closest to its (hi, hi) entry.
cplx wilkinson_shift(const ComplexMatrix& h, int hi) {
  const cplx a = h(hi - 1, hi - 1);
  const cplx b = h(hi - 1, hi);
  const cplx c = h(hi, hi - 1);
  const cplx d = h(hi, hi);
  const cplx half_tr = 0.5 * (a + d);
  const cplx det = a * d - b * c;
  const cplx disc = std::sqrt(half_tr * half_tr - det);
  const cplx l1 = half_tr + disc;
  const cplx l2 = half_tr - disc;
  if (std::isnan(l1.real()) || std::isnan(l1.imag())) return d;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

HessenbergResult hessenberg_reduce(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix h = a;
  ComplexMatrix q = ComplexMatrix::identity(n);

  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (int k = 0; k + 2 < n; ++k) {
    // Householder reflector clearing column k below the subdiagonal.
    double col_norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) col_norm2 += std::norm(h(i, k));
    const double col_norm = std::sqrt(col_norm2);
    if (col_norm == 0.0) continue;

    const cplx pivot = h(k + 1, k);
    const cplx phase =
        (pivot == cplx{0.0, 0.0}) ? cplx{1.0, 0.0} : pivot / std::abs(pivot);
    const cplx alpha = -phase * col_norm;

    const int m = n - (k + 1);  // reflector length
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = h(k + 1 + i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (int i = 0; i < m; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
    const double vnorm = std::sqrt(vnorm2);
    if (vnorm == 0.0) continue;
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] /= vnorm;

    // Left: rows k+1..n-1, columns k..n-1.
    for (int j = k; j < n; ++j) {
      cplx w{0.0, 0.0};
      for (int i = 0; i < m; ++i)
        w += std::conj(v[static_cast<std::size_t>(i)]) * h(k + 1 + i, j);
      w *= 2.0;
      for (int i = 0; i < m; ++i)
        h(k + 1 + i, j) -= v[static_cast<std::size_t>(i)] * w;
    }
    // Right: columns k+1..n-1, all rows.
    for (int i = 0; i < n; ++i) {
      cplx w{0.0, 0.0};
      for (int j = 0; j < m; ++j)
        w += h(i, k + 1 + j) * v[static_cast<std::size_t>(j)];
      w *= 2.0;
      for (int j = 0; j < m; ++j)
        h(i, k + 1 + j) -= w * std::conj(v[static_cast<std::size_t>(j)]);
    }
    // Accumulate q <- q * (I - 2 v v^H).
    for (int i = 0; i < n; ++i) {
      cplx w{0.0, 0.0};
      for (int j = 0; j < m; ++j)
        w += q(i, k + 1 + j) * v[static_cast<std::size_t>(j)];
      w *= 2.0;
      for (int j = 0; j < m; ++j)
        q(i, k + 1 + j) -= w * std::conj(v[static_cast<std::size_t>(j)]);
    }

    // The reflected column is known analytically; writing it removes
    // rounding dust and keeps the strict lower part exactly zero.
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  return {std::move(q), std::move(h)};
}

SchurDecomposition schur_decompose(const ComplexMatrix& a, double tol,
                                   int max_sweeps) {
  if (max_sweeps < 1)
    throw InvalidArgumentError("schur_decompose: max_sweeps must be >= 1");
  const int n = a.dim();
  const double anorm = frobenius_norm(a);
  const double thresh = (tol > 0.0) ? tol : 1e-12 * anorm;

  HessenbergResult hess = hessenberg_reduce(a);
  ComplexMatrix& h = hess.h;
  ComplexMatrix& q = hess.q;

  const long step_cap = static_cast<long>(max_sweeps) * n * n + 16;
  long steps = 0;
  int since_deflation = 0;

  auto fail = [&](const char* what) {
    ComplexMatrix delta = h;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) delta(i, j) = 0.0;
    throw QrNoConvergenceError(what, adjoint(q), std::move(delta));
  };

  int hi = n - 1;
  while (hi > 0) {
    // Deflate from the bottom; l is the top of the active unreduced block.
    int l = hi;
    while (l > 0 && std::abs(h(l, l - 1)) > thresh) --l;
    if (l > 0) h(l, l - 1) = 0.0;
    if (l == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }

    if (++steps > step_cap) fail("schur_decompose: step budget exhausted");
    if (since_deflation >= max_sweeps)
      fail("schur_decompose: eigenvalue failed to deflate");
    ++since_deflation;

    cplx mu;
    if (since_deflation % 10 == 0) {
      // Exceptional shift to break rare shift cycles.
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      mu = wilkinson_shift(h, hi);
    }

    // Explicit shifted QR step on the decoupled window [l, hi]:
    // factor (H - mu I) = G^H R by a Givens chain, then form R G + mu I.
    for (int i = l; i <= hi; ++i) h(i, i) -= mu;

    std::vector<Givens> chain;
    chain.reserve(static_cast<std::size_t>(hi - l));
    for (int i = l; i < hi; ++i) {
      Givens g = make_givens(h(i, i), h(i + 1, i));
      chain.push_back(g);
      h(i, i) = g.r;
      h(i + 1, i) = 0.0;
      for (int j = i + 1; j < n; ++j) {
        const cplx x = h(i, j), y = h(i + 1, j);
        h(i, j) = g.c * x + g.s * y;
        h(i + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (int i = l; i < hi; ++i) {
      const Givens& g = chain[static_cast<std::size_t>(i - l)];
      // Right-multiply by G^H on columns (i, i+1); rows above i+1 only,
      // the rest of both columns is zero.
      for (int r = 0; r <= i + 1; ++r) {
        const cplx x = h(r, i), y = h(r, i + 1);
        h(r, i) = g.c * x + std::conj(g.s) * y;
        h(r, i + 1) = -g.s * x + g.c * y;
      }
      for (int r = 0; r < n; ++r) {
        const cplx x = q(r, i), y = q(r, i + 1);
        q(r, i) = g.c * x + std::conj(g.s) * y;
        q(r, i + 1) = -g.s * x + g.c * y;
      }
    }
    for (int i = l; i <= hi; ++i) h(i, i) += mu;
  }

  SchurDecomposition out;
  out.delta = h;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) out.delta(i, j) = 0.0;
  out.u = adjoint(q);

  const ComplexMatrix recon = mat_mul(q, mat_mul(out.delta, adjoint(q)));
  out.residual = frobenius_norm(mat_sub(a, recon)) / std::max(1.0, anorm);
  out.unitarity_defect =
      frobenius_norm(mat_sub(mat_mul(out.u, adjoint(out.u)),
                             ComplexMatrix::identity(n)));
  return out;
}

Spectrum eigenvalues(const ComplexMatrix& a) {
  SchurDecomposition sd = schur_decompose(a);
  Spectrum sp;
  sp.eigenvalues.reserve(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) {
    sp.eigenvalues.push_back(sd.delta(i, i));
    sp.rho = std::max(sp.rho, std::abs(sd.delta(i, i)));
  }
  return sp;
}

}  // namespace specnorm
