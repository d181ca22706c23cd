#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prng.hpp"

namespace specnorm {

namespace {

constexpr double kJacobiTol = 1e-14;
constexpr int kJacobiMaxSweeps = 64;

// Power-iteration controls for the large-n path.
constexpr long kPowerMaxIterations = 100000;
constexpr std::uint64_t kPowerRestartSeed = 0x9E3779B97F4A7C15ULL;

double column_norm_sq(const ComplexMatrix& b, int j) {
  double s = 0.0;
  for (int i = 0; i < b.dim(); ++i) s += std::norm(b(i, j));
  return s;
}

SpectralNormResult power_iteration_once(const ComplexMatrix& a,
                                        const ComplexMatrix& a_adj,
                                        ComplexVector v, double tol,
                                        long budget) {
  const double vn = vec_norm2(v);
  for (cplx& z : v) z /= vn;
  double sigma_prev = -1.0;
  int stable = 0;
  SpectralNormResult res;
  for (long it = 0; it < budget; ++it) {
    ComplexVector w = mat_vec(a, v);
    const double wn = vec_norm2(w);
    if (wn == 0.0) {
      // v is in the kernel; sigma estimate from this start is 0.
      res.value = 0.0;
      res.converged = true;
      res.iterations = it + 1;
      return res;
    }
    ComplexVector z = mat_vec(a_adj, w);
    const double sigma = wn;  // sqrt(v^H A^H A v) for unit v
    const double zn = vec_norm2(z);
    if (zn == 0.0) {
      res.value = sigma;
      res.converged = true;
      res.iterations = it + 1;
      return res;
    }
    for (cplx& c : z) c /= zn;
    v = std::move(z);
    if (sigma_prev >= 0.0 &&
        std::abs(sigma - sigma_prev) <= tol * std::max(sigma, 1e-300)) {
      if (++stable >= 3) {
        res.value = sigma;
        res.converged = true;
        res.iterations = it + 1;
        return res;
      }
    } else {
      stable = 0;
    }
    sigma_prev = sigma;
    res.value = sigma;
    res.iterations = it + 1;
  }
  res.converged = false;
  return res;
}

}  // namespace

SvdResult jacobi_svd(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix b = a;
  ComplexMatrix v = ComplexMatrix::identity(n);

  SvdResult out;
  out.converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = column_norm_sq(b, p);
        const double aqq = column_norm_sq(b, q);
        cplx apq{0.0, 0.0};
        for (int i = 0; i < n; ++i) apq += std::conj(b(i, p)) * b(i, q);
        const double off = std::abs(apq);
        if (off <= kJacobiTol * std::sqrt(app * aqq) || off == 0.0) continue;
        rotated = true;

        // Unitary 2x2 that orthogonalizes columns p and q. The phase of
        // the cross term is absorbed first, then a real Jacobi rotation
        // diagonalizes [[app, |apq|], [|apq|, aqq]].
        const cplx phase = apq / off;
        const double tau = (aqq - app) / (2.0 * off);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        // Columns mix as: new_p = cs*p - sn*conj(phase)*q
        //                 new_q = sn*phase*p + cs*q
        const cplx sp = sn * std::conj(phase);
        const cplx sq = sn * phase;
        for (int i = 0; i < n; ++i) {
          const cplx bp = b(i, p), bq = b(i, q);
          b(i, p) = cs * bp - sp * bq;
          b(i, q) = sq * bp + cs * bq;
          const cplx vp = v(i, p), vq = v(i, q);
          v(i, p) = cs * vp - sp * vq;
          v(i, q) = sq * vp + cs * vq;
        }
      }
    }
    out.sweeps = sweep + 1;
    if (!rotated) {
      out.converged = true;
      break;
    }
  }

  std::vector<double> sigma(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    sigma[static_cast<std::size_t>(j)] = std::sqrt(column_norm_sq(b, j));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return sigma[static_cast<std::size_t>(x)] > sigma[static_cast<std::size_t>(y)];
  });

  out.singular_values.resize(static_cast<std::size_t>(n));
  ComplexMatrix vo(n);
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    out.singular_values[static_cast<std::size_t>(j)] =
        sigma[static_cast<std::size_t>(src)];
    for (int i = 0; i < n; ++i) vo(i, j) = v(i, src);
  }
  out.right_vectors = std::move(vo);
  return out;
}

SpectralNormResult spectral_norm_detail(const ComplexMatrix& a, double tol) {
  if (tol <= 0.0) throw InvalidArgumentError("spectral_norm: tol must be > 0");
  const int n = a.dim();
  if (n <= kSvdDirectLimit) {
    SvdResult svd = jacobi_svd(a);
    SpectralNormResult res;
    res.value = svd.singular_values.empty() ? 0.0 : svd.singular_values[0];
    res.converged = svd.converged;
    res.iterations = svd.sweeps;
    return res;
  }

  const ComplexMatrix a_adj = adjoint(a);

  // Deterministic start: normalized all-ones vector.
  ComplexVector ones(static_cast<std::size_t>(n), cplx{1.0, 0.0});
  SpectralNormResult first =
      power_iteration_once(a, a_adj, std::move(ones), tol, kPowerMaxIterations);

  // A second pass from a seeded random start guards against the ones
  // vector being (numerically) orthogonal to the dominant singular pair.
  SplitMix64 rng(kPowerRestartSeed);
  ComplexVector random(static_cast<std::size_t>(n));
  for (cplx& z : random) z = rng.complex_in_square(1.0);
  SpectralNormResult second =
      power_iteration_once(a, a_adj, std::move(random), tol, kPowerMaxIterations);

  SpectralNormResult res;
  res.value = std::max(first.value, second.value);
  res.converged = first.converged && second.converged;
  res.iterations = first.iterations + second.iterations;
  return res;
}

double spectral_norm(const ComplexMatrix& a, double tol) {
  return spectral_norm_detail(a, tol).value;
}

double spectral_radius_gelfand(const ComplexMatrix& a, int k) {
  if (k < 1) throw InvalidArgumentError("spectral_radius_gelfand: k must be >= 1");
  ComplexMatrix b = a;
  double log_scale = 0.0;  // A^(2^j) = b * exp(log_scale) after j squarings
  for (int j = 0; j < k; ++j) {
    const double s = frobenius_norm(b);
    if (s == 0.0) return 0.0;
    if (!std::isfinite(s))
      throw OverflowError("spectral_radius_gelfand: overflow despite rescaling");
    const ComplexMatrix scaled = mat_scale(b, cplx{1.0 / s, 0.0});
    b = mat_mul(scaled, scaled);
    log_scale = 2.0 * (log_scale + std::log(s));
  }
  const double sn = spectral_norm(b, 1e-12);
  if (sn == 0.0) return 0.0;
  const double pow2k = std::ldexp(1.0, k);  // 2^k
  const double estimate = std::exp((std::log(sn) + log_scale) / pow2k);
  if (!std::isfinite(estimate))
    throw OverflowError("spectral_radius_gelfand: overflow despite rescaling");
  return estimate;
}

double condition_number_2(const ComplexMatrix& a) {
  SvdResult svd = jacobi_svd(a);
  if (!svd.converged)
    throw NoConvergenceError("condition_number_2: SVD did not converge");
  const double smax = svd.singular_values.front();
  const double smin = svd.singular_values.back();
  if (smin <= smax * a.dim() * std::numeric_limits<double>::epsilon() || smax == 0.0)
    throw SingularMatrixError("condition_number_2: matrix is singular");
  return smax / smin;
}

}  // namespace specnorm
