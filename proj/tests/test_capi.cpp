// Exercises the public C API end to end: matrix I/O, construction,
// verification, norm evaluation, certificate persistence, and the
// contraction runner. Plain asserts; exits nonzero on the first failure.

#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "specnorm/specnorm.h"

#define REQUIRE(cond)                                                     \
  do {                                                                    \
    if (!(cond)) {                                                        \
      std::fprintf(stderr, "[FAIL] %s:%d: %s\n", __FILE__, __LINE__,      \
                   #cond);                                                \
      std::fprintf(stderr, "       last error: %s\n", specnorm_last_error()); \
      return 1;                                                           \
    }                                                                     \
  } while (0)

namespace {

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

int main() {
  specnorm_status st = SPECNORM_OK;

  // Parse, dims, entries, digest.
  specnorm_matrix* a =
      specnorm_matrix_parse("0.1,0.35,0\n0,0.2,0.3\n0.05,0,0.15", &st);
  REQUIRE(st == SPECNORM_OK);
  REQUIRE(a != nullptr);
  REQUIRE(specnorm_matrix_dim(a) == 3);
  double re = 0.0, im = 0.0;
  REQUIRE(specnorm_matrix_entry(a, 0, 1, &re, &im) == SPECNORM_OK);
  REQUIRE(re == 0.35 && im == 0.0);
  REQUIRE(specnorm_matrix_entry(a, 3, 0, &re, &im) ==
          SPECNORM_ERR_INVALID_ARGUMENT);
  char digest[64];
  REQUIRE(specnorm_matrix_digest(a, digest, sizeof(digest)) == SPECNORM_OK);
  REQUIRE(std::strncmp(digest, "fnv1a64:", 8) == 0);

  // Parse failures surface as status codes with detail text.
  specnorm_matrix* bad = specnorm_matrix_parse("1,2\n3", &st);
  REQUIRE(bad == nullptr);
  REQUIRE(st == SPECNORM_ERR_PARSE);
  REQUIRE(std::strlen(specnorm_last_error()) > 0);
  bad = specnorm_matrix_parse("nan", &st);
  REQUIRE(bad == nullptr && st == SPECNORM_ERR_NONFINITE);

  // Matrix file round trip preserves the digest.
  const char* matrix_path = "capi_matrix_roundtrip.txt";
  REQUIRE(specnorm_matrix_write(a, matrix_path) == SPECNORM_OK);
  specnorm_matrix* a_again = specnorm_matrix_read(matrix_path, &st);
  REQUIRE(st == SPECNORM_OK);
  char digest_again[64];
  REQUIRE(specnorm_matrix_digest(a_again, digest_again, sizeof(digest_again)) ==
          SPECNORM_OK);
  REQUIRE(std::strcmp(digest, digest_again) == 0);
  specnorm_matrix_free(a_again);
  std::remove(matrix_path);

  // Spectrum and the squaring estimate.
  double eig_re[3], eig_im[3], rho = 0.0;
  REQUIRE(specnorm_spectrum(a, eig_re, eig_im, &rho) == SPECNORM_OK);
  REQUIRE(rho > 0.0 && rho < 1.0);
  double gelfand = 0.0;
  REQUIRE(specnorm_spectral_radius_gelfand(a, 7, &gelfand) == SPECNORM_OK);
  REQUIRE(std::abs(gelfand - rho) <= 0.05 * std::max(1.0, rho));
  double snorm = 0.0;
  REQUIRE(specnorm_spectral_norm(a, 1e-12, &snorm) == SPECNORM_OK);
  REQUIRE(snorm >= rho);

  // Construction and verification.
  specnorm_norm* norm = nullptr;
  specnorm_certificate* cert = nullptr;
  REQUIRE(specnorm_construct(a, 0.05, 0.0, &norm, &cert) == SPECNORM_OK);
  REQUIRE(specnorm_certificate_verified(cert) == 1);
  REQUIRE(close(specnorm_certificate_rho(cert), rho, 1e-10));
  REQUIRE(specnorm_certificate_norm_value(cert) <= rho + 0.05 + 1e-8);
  REQUIRE(specnorm_certificate_t(cert) >= 1.0);
  REQUIRE(specnorm_norm_dim(norm) == 3);
  REQUIRE(specnorm_norm_epsilon(norm) == 0.05);

  specnorm_certificate* fresh = nullptr;
  REQUIRE(specnorm_verify(norm, a, 500, 42, &fresh) == SPECNORM_OK);
  REQUIRE(specnorm_certificate_verified(fresh) == 1);
  REQUIRE(close(specnorm_certificate_norm_value(fresh),
                specnorm_certificate_norm_value(cert), 1e-12));

  // Norm evaluation: identity maps to 1, vectors scale.
  specnorm_matrix* eye = specnorm_matrix_parse("1,0,0\n0,1,0\n0,0,1", &st);
  double value = 0.0;
  REQUIRE(specnorm_matrix_norm(norm, eye, &value) == SPECNORM_OK);
  REQUIRE(close(value, 1.0, 1e-9));
  const double vre[3] = {1.0, -2.0, 0.5};
  const double vim[3] = {0.0, 1.0, 0.0};
  double vn1 = 0.0, vn2 = 0.0;
  REQUIRE(specnorm_vector_norm(norm, vre, vim, 3, &vn1) == SPECNORM_OK);
  const double scaled_re[3] = {2.0, -4.0, 1.0};
  const double scaled_im[3] = {0.0, 2.0, 0.0};
  REQUIRE(specnorm_vector_norm(norm, scaled_re, scaled_im, 3, &vn2) ==
          SPECNORM_OK);
  REQUIRE(close(vn2, 2.0 * vn1, 1e-12));
  REQUIRE(specnorm_vector_norm(norm, vre, vim, 2, &vn1) ==
          SPECNORM_ERR_DIMENSION_MISMATCH);

  // Certificate persistence round trip.
  const char* cert_path = "capi_cert_roundtrip.json";
  REQUIRE(specnorm_certificate_save(fresh, norm, a, cert_path) == SPECNORM_OK);
  specnorm_norm* norm2 = nullptr;
  specnorm_certificate* cert2 = nullptr;
  char stored_digest[64];
  REQUIRE(specnorm_certificate_load(cert_path, &norm2, &cert2, stored_digest,
                                    sizeof(stored_digest)) == SPECNORM_OK);
  REQUIRE(std::string(stored_digest) == digest);
  REQUIRE(specnorm_certificate_verified(cert2) == 1);
  REQUIRE(specnorm_norm_t(norm2) == specnorm_norm_t(norm));
  specnorm_certificate* reverified = nullptr;
  REQUIRE(specnorm_verify(norm2, a, 200, 42, &reverified) == SPECNORM_OK);
  REQUIRE(specnorm_certificate_verified(reverified) == 1);
  std::remove(cert_path);

  // Error contracts.
  specnorm_norm* nope = nullptr;
  specnorm_certificate* nope_cert = nullptr;
  REQUIRE(specnorm_construct(a, -1.0, 0.0, &nope, &nope_cert) ==
          SPECNORM_ERR_INVALID_ARGUMENT);
  specnorm_matrix* jordan = specnorm_matrix_parse(
      "0.9,1,0,0,0,0,0,0\n0,0.9,1,0,0,0,0,0\n0,0,0.9,1,0,0,0,0\n"
      "0,0,0,0.9,1,0,0,0\n0,0,0,0,0.9,1,0,0\n0,0,0,0,0,0.9,1,0\n"
      "0,0,0,0,0,0,0.9,1\n0,0,0,0,0,0,0,0.9",
      &st);
  REQUIRE(st == SPECNORM_OK);
  REQUIRE(specnorm_construct(jordan, 1e-3, 0.0, &nope, &nope_cert) ==
          SPECNORM_ERR_CONDITIONING);
  REQUIRE(std::string(specnorm_last_error()).find("t=") != std::string::npos);
  REQUIRE(std::string(specnorm_status_name(SPECNORM_ERR_CONDITIONING)) ==
          "conditioning-exceeded");

  // Contraction runner end to end.
  specnorm_report* report = nullptr;
  REQUIRE(specnorm_contract_run(6, 0.3, 7, 0.5, 0.5, 50, &report) ==
          SPECNORM_OK);
  REQUIRE(specnorm_report_certified(report) == 1);
  REQUIRE(specnorm_report_step_count(report) == 51);
  REQUIRE(specnorm_report_max_ratio(report) <=
          specnorm_report_certified_rate(report) * (1.0 + 1e-8));
  REQUIRE(specnorm_report_rho(report) <
          specnorm_report_certified_rate(report));
  const char* report_path = "capi_report.json";
  REQUIRE(specnorm_report_save(report, report_path) == SPECNORM_OK);
  std::remove(report_path);

  // Vector parsing.
  double* pre = nullptr;
  double* pim = nullptr;
  int32_t pn = 0;
  REQUIRE(specnorm_vector_parse("1, 2i, 0.5-0.25i", &pre, &pim, &pn) ==
          SPECNORM_OK);
  REQUIRE(pn == 3);
  REQUIRE(pre[0] == 1.0 && pim[1] == 2.0 && pre[2] == 0.5 && pim[2] == -0.25);
  specnorm_buffer_free(pre);
  specnorm_buffer_free(pim);

  specnorm_report_free(report);
  specnorm_certificate_free(reverified);
  specnorm_certificate_free(cert2);
  specnorm_norm_free(norm2);
  specnorm_certificate_free(fresh);
  specnorm_certificate_free(cert);
  specnorm_norm_free(norm);
  specnorm_matrix_free(eye);
  specnorm_matrix_free(jordan);
  specnorm_matrix_free(a);

  std::printf("test_capi: all checks passed\n");
  return 0;
}
