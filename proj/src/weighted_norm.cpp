#include "weighted_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prng.hpp"
#include "spectral.hpp"

namespace specnorm {

namespace {

constexpr double kSelectionMargin = 0.01;     // headroom kept inside epsilon
constexpr double kBisectionRelPrecision = 1e-3;
constexpr double kCertificateSlackScale = 1e-8;

double lower_triangle_max(const ComplexMatrix& m) {
  double mx = 0.0;
  for (int i = 1; i < m.dim(); ++i)
    for (int j = 0; j < i; ++j) mx = std::max(mx, std::abs(m(i, j)));
  return mx;
}

void require_upper_triangular(const ComplexMatrix& m, const char* who) {
  const double f = frobenius_norm(m);
  if (lower_triangle_max(m) > 1e-10 * f)
    throw InvalidArgumentError(std::string(who) +
                               ": input is not upper triangular");
}

double strict_upper_frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i + 1; j < m.dim(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

double certificate_slack(double rho) {
  return kCertificateSlackScale * std::max(1.0, rho);
}

double diag_max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (int i = 0; i < m.dim(); ++i) r = std::max(r, std::abs(m(i, i)));
  return r;
}

}  // namespace

double ScalingMatrix::entry(int i) const { return std::pow(t, i + 1); }

double ScalingMatrix::inverse_entry(int i) const { return 1.0 / entry(i); }

ComplexMatrix ScalingMatrix::materialize() const {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = entry(i);
  return m;
}

ComplexMatrix ScalingMatrix::materialize_inverse() const {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = inverse_entry(i);
  return m;
}

ScalingMatrix scaling_matrix(double t, int n) {
  if (n < 1) throw InvalidArgumentError("scaling_matrix: n must be >= 1");
  if (!(t > 0.0)) throw InvalidArgumentError("scaling_matrix: t must be > 0");
  // Both t^n and t^-n must stay inside double range.
  const double max_log = std::log(std::numeric_limits<double>::max());
  if (static_cast<double>(n) * std::abs(std::log(t)) >= max_log)
    throw OverflowError("scaling_matrix: t^n leaves double range");
  return ScalingMatrix{t, n};
}

ComplexMatrix scaled_triangular(const ComplexMatrix& delta, double t) {
  if (!(t > 0.0))
    throw InvalidArgumentError("scaled_triangular: t must be > 0");
  require_upper_triangular(delta, "scaled_triangular");
  const int n = delta.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i) {
    r(i, i) = delta(i, i);
    for (int j = i + 1; j < n; ++j)
      r(i, j) = delta(i, j) * std::pow(t, static_cast<double>(i - j));
  }
  return r;
}

ComplexMatrix offdiagonal_part(const ComplexMatrix& delta_tilde) {
  require_upper_triangular(delta_tilde, "offdiagonal_part");
  const int n = delta_tilde.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r(i, j) = delta_tilde(i, j);
  return r;
}

TSelection select_t(const ComplexMatrix& delta, double epsilon,
                    double max_kappa) {
  if (!(epsilon > 0.0)) throw InvalidArgumentError("select_t: epsilon must be > 0");
  require_upper_triangular(delta, "select_t");
  const int n = delta.dim();

  const auto scaled_off_norm = [&](double t) {
    return spectral_norm(offdiagonal_part(scaled_triangular(delta, t)));
  };
  const auto check_kappa = [&](double t) {
    const double log_kappa = (n - 1) * std::log(t);
    if (log_kappa > std::log(max_kappa))
      throw ConditioningExceededError(t, std::exp(log_kappa), max_kappa);
  };

  const double threshold = epsilon * (1.0 - kSelectionMargin);
  const double upper_mass = strict_upper_frobenius(delta);

  // Already (numerically) normal: no scaling needed.
  if (upper_mass <= 1e-14 * frobenius_norm(delta))
    return {1.0, scaled_off_norm(1.0)};

  const double g1 = scaled_off_norm(1.0);
  if (g1 < threshold) return {1.0, g1};

  // Frobenius bound: for t >= 1 every scaled entry is at most 1/t times
  // the original, so the scaled off-diagonal norm is <= upper_mass / t.
  double lo = 1.0;
  double hi = std::max(1.0, upper_mass / threshold);
  double g_hi = scaled_off_norm(hi);
  for (int guard = 0; !(g_hi < threshold) && guard < 64; ++guard) {
    lo = hi;
    hi *= 1.0625;
    g_hi = scaled_off_norm(hi);
  }
  if (!(g_hi < threshold))
    throw NoConvergenceError("select_t: scaled off-diagonal norm failed to drop");

  while (hi > lo * (1.0 + kBisectionRelPrecision)) {
    const double mid = std::sqrt(lo * hi);
    const double g_mid = scaled_off_norm(mid);
    if (g_mid < threshold) {
      hi = mid;
      g_hi = g_mid;
    } else {
      lo = mid;
    }
  }

  check_kappa(hi);
  return {hi, g_hi};
}

std::pair<WeightedNorm, NormCertificate> construct_norm(const ComplexMatrix& a,
                                                        double epsilon,
                                                        double max_kappa) {
  ensure_finite(a, "construct_norm");
  if (!(epsilon > 0.0))
    throw InvalidArgumentError("construct_norm: epsilon must be > 0");
  const int n = a.dim();

  const SchurDecomposition sd = schur_decompose(a);
  const TSelection sel = select_t(sd.delta, epsilon, max_kappa);
  const ScalingMatrix scal = scaling_matrix(sel.t, n);

  WeightedNorm w;
  w.p = ComplexMatrix(n);
  w.p_inv = ComplexMatrix(n);
  for (int i = 0; i < n; ++i) {
    const double s = scal.entry(i);
    const double s_inv = scal.inverse_entry(i);
    for (int j = 0; j < n; ++j) {
      w.p(i, j) = s * sd.u(i, j);
      w.p_inv(j, i) = std::conj(sd.u(i, j)) * s_inv;
    }
  }
  w.t = sel.t;
  w.epsilon = epsilon;
  w.kappa = std::pow(sel.t, n - 1);
  w.source_dim = n;

  // The norm of the source matrix equals the spectral norm of the scaled
  // triangular form; evaluating it there keeps the certificate independent
  // of the conditioning of P.
  const ComplexMatrix delta_tilde = scaled_triangular(sd.delta, sel.t);

  NormCertificate cert;
  cert.rho = diag_max_abs(sd.delta);
  cert.norm_value = spectral_norm(delta_tilde);
  cert.epsilon = epsilon;
  cert.t = sel.t;
  cert.kappa = w.kappa;
  cert.delta_norm = sel.delta_norm;
  cert.schur_residual = sd.residual;
  const double slack = certificate_slack(cert.rho);
  cert.verified = (cert.rho - slack <= cert.norm_value) &&
                  (cert.norm_value <= cert.rho + epsilon + slack) &&
                  (cert.delta_norm < epsilon);
  return {std::move(w), cert};
}

double matrix_norm(const WeightedNorm& w, const ComplexMatrix& m) {
  if (m.dim() != w.source_dim)
    throw DimensionMismatchError("matrix_norm: dimension mismatch");
  return spectral_norm(mat_mul(mat_mul(w.p, m), w.p_inv));
}

double vector_norm(const WeightedNorm& w, const ComplexVector& x) {
  if (static_cast<int>(x.size()) != w.source_dim)
    throw DimensionMismatchError("vector_norm: dimension mismatch");
  return vec_norm2(mat_vec(w.p, x));
}

NormCertificate verify_certificate(const WeightedNorm& w,
                                   const ComplexMatrix& a, int trials,
                                   std::uint64_t seed) {
  if (trials < 1)
    throw InvalidArgumentError("verify_certificate: trials must be >= 1");

  NormCertificate cert;
  cert.epsilon = w.epsilon;
  cert.t = w.t;
  cert.kappa = w.kappa;
  cert.verified = false;
  if (a.dim() != w.source_dim) return cert;
  const int n = a.dim();

  try {
    const SchurDecomposition sd = schur_decompose(a);
    cert.schur_residual = sd.residual;
    cert.rho = diag_max_abs(sd.delta);

    const double rho_gelfand = spectral_radius_gelfand(a, 7);
    const bool gelfand_ok =
        std::abs(rho_gelfand - cert.rho) <= 0.05 * std::max(1.0, cert.rho);

    // Does P match the scaling of the freshly computed Schur factor? When
    // it does, the norm of `a` can be read off the scaled triangular form,
    // which is exact in the scaling; the literal product P a P^-1 would
    // amplify the Schur rounding floor by kappa.
    bool consistent = true;
    for (int i = 0; i < n && consistent; ++i) {
      const double s = std::pow(w.t, i + 1);
      double row_err2 = 0.0;  // row i of P against s * row i of U
      double inv_err2 = 0.0;  // column i of P_inv, rescaled by s, against U^H
      for (int j = 0; j < n; ++j) {
        row_err2 += std::norm(w.p(i, j) / s - sd.u(i, j));
        inv_err2 += std::norm(w.p_inv(j, i) * s - std::conj(sd.u(i, j)));
      }
      if (std::sqrt(row_err2) > 1e-6 || std::sqrt(inv_err2) > 1e-6)
        consistent = false;
    }

    ComplexMatrix transform;  // P a P^-1 in whichever evaluation is used
    if (consistent) {
      transform = scaled_triangular(sd.delta, w.t);
    } else {
      transform = mat_mul(mat_mul(w.p, a), w.p_inv);
    }
    cert.norm_value = spectral_norm(transform);

    ComplexMatrix lambda(n);
    for (int i = 0; i < n; ++i) lambda(i, i) = sd.delta(i, i);
    cert.delta_norm = spectral_norm(mat_sub(transform, lambda));

    const double slack = certificate_slack(cert.rho);
    const bool sandwich_ok = (cert.rho - slack <= cert.norm_value) &&
                             (cert.norm_value <= cert.rho + w.epsilon + slack);

    // Induced consistency on random vectors.
    SplitMix64 rng(seed);
    bool bound_ok = true;
    for (int k = 0; k < trials && bound_ok; ++k) {
      ComplexVector x(static_cast<std::size_t>(n));
      for (cplx& z : x) z = rng.complex_in_square(1.0);
      const double lhs = vector_norm(w, mat_vec(a, x));
      const double rhs = cert.norm_value * vector_norm(w, x) * (1.0 + 1e-10);
      if (lhs > rhs) bound_ok = false;
    }

    // The supremum is attained at the top right singular direction of the
    // transform. In the consistent case the ratio is evaluated in the
    // factored form x* = P^-1 v, where P P^-1 v = v holds exactly.
    const SvdResult svd = jacobi_svd(transform);
    ComplexVector v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] = svd.right_vectors(i, 0);
    double ratio;
    if (consistent) {
      ratio = vec_norm2(mat_vec(transform, v)) / vec_norm2(v);
    } else {
      const ComplexVector witness = mat_vec(w.p_inv, v);
      const double denom = vector_norm(w, witness);
      ratio = denom == 0.0 ? 0.0 : vector_norm(w, mat_vec(a, witness)) / denom;
    }
    const bool witness_ok = ratio >= cert.norm_value * (1.0 - 1e-8);

    cert.verified = gelfand_ok && sandwich_ok && bound_ok && witness_ok &&
                    (cert.delta_norm < w.epsilon);
  } catch (const Error&) {
    cert.verified = false;
  }
  return cert;
}

}  // namespace specnorm
