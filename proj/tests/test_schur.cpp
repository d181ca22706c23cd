#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "complex_matrix.hpp"
#include "schur.hpp"
#include "spectral.hpp"
#include "test_support.hpp"

using namespace specnorm;
namespace ts = specnorm::testing;

namespace {

double reconstruction_residual(const ComplexMatrix& a,
                               const SchurDecomposition& sd) {
  const ComplexMatrix recon =
      mat_mul(adjoint(sd.u), mat_mul(sd.delta, sd.u));
  return frobenius_norm(mat_sub(a, recon)) /
         std::max(1.0, frobenius_norm(a));
}

double strict_lower_max(const ComplexMatrix& m) {
  double mx = 0.0;
  for (int i = 1; i < m.dim(); ++i)
    for (int j = 0; j < i; ++j) mx = std::max(mx, std::abs(m(i, j)));
  return mx;
}

double strict_upper_frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i + 1; j < m.dim(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("hessenberg_reduce") {
  SUBCASE("upper triangular input is untouched") {
    const ComplexMatrix a = ts::random_upper_triangular(5, 21);
    const HessenbergResult hr = hessenberg_reduce(a);
    CHECK(frobenius_norm(mat_sub(hr.q, ComplexMatrix::identity(5))) == 0.0);
    CHECK(frobenius_norm(mat_sub(hr.h, a)) == 0.0);
  }
  SUBCASE("2x2 is already Hessenberg") {
    const ComplexMatrix a = ts::random_matrix(2, 22);
    const HessenbergResult hr = hessenberg_reduce(a);
    CHECK(frobenius_norm(mat_sub(hr.q, ComplexMatrix::identity(2))) == 0.0);
    CHECK(frobenius_norm(mat_sub(hr.h, a)) == 0.0);
  }
  SUBCASE("random 5x5 residual and structure") {
    const ComplexMatrix a = ts::random_matrix(5, 23);
    const HessenbergResult hr = hessenberg_reduce(a);
    // Exact zeros below the first subdiagonal.
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j + 1 < i; ++j) CHECK(hr.h(i, j) == cplx{0.0, 0.0});
    const ComplexMatrix recon = mat_mul(hr.q, mat_mul(hr.h, adjoint(hr.q)));
    CHECK(frobenius_norm(mat_sub(a, recon)) / frobenius_norm(a) <= 1e-12);
    CHECK(frobenius_norm(mat_sub(mat_mul(hr.q, adjoint(hr.q)),
                                 ComplexMatrix::identity(5))) <= 1e-13);
  }
}

TEST_CASE("schur_decompose examples") {
  SUBCASE("diagonal input") {
    const ComplexMatrix a =
        ComplexMatrix::diagonal({cplx{1.0, 0.0}, cplx{0.0, 2.0}});
    const SchurDecomposition sd = schur_decompose(a);
    CHECK(strict_upper_frobenius(sd.delta) <= 1e-12);
    const double m0 = std::abs(sd.delta(0, 0));
    const double m1 = std::abs(sd.delta(1, 1));
    CHECK(std::min(m0, m1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::max(m0, m1) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("already triangular: identity transform") {
    ComplexMatrix a(2);
    a(0, 1) = 1.0;
    const SchurDecomposition sd = schur_decompose(a);
    CHECK(frobenius_norm(mat_sub(sd.u, ComplexMatrix::identity(2))) == 0.0);
    CHECK(frobenius_norm(mat_sub(sd.delta, a)) == 0.0);
  }
  SUBCASE("random 6x6 magnitudes cross-checked by repeated squaring") {
    const ComplexMatrix a = ts::random_matrix(6, 24);
    const SchurDecomposition sd = schur_decompose(a);
    double rho = 0.0;
    for (int i = 0; i < 6; ++i) rho = std::max(rho, std::abs(sd.delta(i, i)));
    const double oracle = spectral_radius_gelfand(a, 7);
    CHECK(std::abs(oracle - rho) <= 0.05 * std::max(1.0, rho));
  }
}

TEST_CASE("schur_decompose quality on random batches") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 2 + static_cast<int>(seed * 3 % 31);
    const ComplexMatrix a = ts::random_matrix(n, 1000 + seed);
    const SchurDecomposition sd = schur_decompose(a);
    CAPTURE(n);
    CHECK(sd.residual <= 1e-9);
    CHECK(reconstruction_residual(a, sd) <= 1e-9);
    CHECK(sd.unitarity_defect <= 1e-10 * n);
    CHECK(strict_lower_max(sd.delta) == 0.0);

    // Trace equals the eigenvalue sum.
    cplx trace{0.0, 0.0}, eig_sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      trace += a(i, i);
      eig_sum += sd.delta(i, i);
    }
    CHECK(std::abs(trace - eig_sum) <= 1e-9 * n * frobenius_norm(a));
  }
}

TEST_CASE("normal matrices give a diagonal triangular factor") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 3 + static_cast<int>(seed);
    const ComplexMatrix q = ts::random_unitary(n, 2000 + seed);
    const ComplexMatrix d = ComplexMatrix::diagonal(
        ts::random_vector(n, 2100 + seed));
    const ComplexMatrix a = mat_mul(q, mat_mul(d, adjoint(q)));
    const double normality =
        frobenius_norm(mat_sub(mat_mul(a, adjoint(a)), mat_mul(adjoint(a), a)));
    REQUIRE(normality <= 1e-12 * frobenius_norm(a));
    const SchurDecomposition sd = schur_decompose(a);
    CHECK(strict_upper_frobenius(sd.delta) <= 1e-8 * frobenius_norm(a));
  }
}

TEST_CASE("eigenvalues") {
  SUBCASE("companion matrix of z^2 - 1") {
    ComplexMatrix c(2);
    c(0, 1) = 1.0;
    c(1, 0) = 1.0;
    const Spectrum sp = eigenvalues(c);
    CHECK(sp.rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ts::eigenvalue_matching_distance(
              sp.eigenvalues, {cplx{1.0, 0.0}, cplx{-1.0, 0.0}}) <= 1e-12);
  }
  SUBCASE("triangular input returns its diagonal") {
    const ComplexMatrix a = ts::random_upper_triangular(5, 31);
    const Spectrum sp = eigenvalues(a);
    for (int i = 0; i < 5; ++i)
      CHECK(sp.eigenvalues[static_cast<std::size_t>(i)] == a(i, i));
  }
  SUBCASE("similarity invariance under unitary conjugation") {
    const ComplexMatrix a = ts::random_matrix(6, 32);
    const ComplexMatrix q = ts::random_unitary(6, 33);
    const ComplexMatrix b = mat_mul(q, mat_mul(a, adjoint(q)));
    CHECK(ts::eigenvalue_matching_distance(eigenvalues(a).eigenvalues,
                                           eigenvalues(b).eigenvalues) <= 1e-8);
  }
}

TEST_CASE("spectrum is similarity invariant for well-conditioned transforms") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const ComplexMatrix a = ts::random_matrix(n, 3000 + seed);
    const ComplexMatrix s = ts::random_well_conditioned(n, 3100 + seed, 0.5);
    const ComplexMatrix s_inv = ts::inverse_small(s);
    const ComplexMatrix b = mat_mul(s, mat_mul(a, s_inv));
    CHECK(ts::eigenvalue_matching_distance(eigenvalues(a).eigenvalues,
                                           eigenvalues(b).eigenvalues) <= 1e-6);

    // The squaring oracle is similarity invariant as well.
    const double ga = spectral_radius_gelfand(a, 7);
    const double gb = spectral_radius_gelfand(b, 7);
    const double rho = eigenvalues(a).rho;
    CHECK(std::abs(ga - rho) <= 0.05 * std::max(1.0, rho));
    CHECK(std::abs(gb - rho) <= 0.05 * std::max(1.0, rho));
  }
}

TEST_CASE("QR failure path carries the partial factorization") {
  // A single sweep per eigenvalue is not enough for a random 12x12.
  const ComplexMatrix a = ts::random_matrix(12, 77);
  try {
    schur_decompose(a, 0.0, 1);
    // Convergence in one sweep per eigenvalue would be surprising but is
    // not impossible; nothing to assert in that case.
  } catch (const QrNoConvergenceError& e) {
    CHECK(e.partial_u.dim() == 12);
    CHECK(e.partial_delta.dim() == 12);
  }
  CHECK_THROWS_AS(schur_decompose(a, 0.0, 0), InvalidArgumentError);
}
