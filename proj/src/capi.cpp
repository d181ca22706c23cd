#include "specnorm/specnorm.h"

#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "complex_matrix.hpp"
#include "contraction.hpp"
#include "prng.hpp"
#include "schur.hpp"
#include "spectral.hpp"
#include "text_io.hpp"
#include "weighted_norm.hpp"

struct specnorm_matrix {
  specnorm::ComplexMatrix m;
};

struct specnorm_norm {
  specnorm::WeightedNorm w;
};

struct specnorm_certificate {
  specnorm::NormCertificate c;
};

struct specnorm_report {
  specnorm::ContractionReport report;
  specnorm::ContractionRunMeta meta;
  bool certified = false;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

specnorm_status status_from_exception() {
  try {
    throw;
  } catch (const specnorm::ConditioningExceededError& e) {
    set_error(e.what());
    return SPECNORM_ERR_CONDITIONING;
  } catch (const specnorm::DimensionMismatchError& e) {
    set_error(e.what());
    return SPECNORM_ERR_DIMENSION_MISMATCH;
  } catch (const specnorm::NonFiniteError& e) {
    set_error(e.what());
    return SPECNORM_ERR_NONFINITE;
  } catch (const specnorm::ParseError& e) {
    set_error(e.what());
    return SPECNORM_ERR_PARSE;
  } catch (const specnorm::SingularMatrixError& e) {
    set_error(e.what());
    return SPECNORM_ERR_SINGULAR;
  } catch (const specnorm::OverflowError& e) {
    set_error(e.what());
    return SPECNORM_ERR_OVERFLOW;
  } catch (const specnorm::NoSpectralGapError& e) {
    set_error(e.what());
    return SPECNORM_ERR_NO_SPECTRAL_GAP;
  } catch (const specnorm::NoConvergenceError& e) {
    set_error(e.what());
    return SPECNORM_ERR_NO_CONVERGENCE;
  } catch (const specnorm::FormatError& e) {
    set_error(e.what());
    return SPECNORM_ERR_FORMAT;
  } catch (const specnorm::IoError& e) {
    set_error(e.what());
    return SPECNORM_ERR_IO;
  } catch (const specnorm::InvalidArgumentError& e) {
    set_error(e.what());
    return SPECNORM_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SPECNORM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SPECNORM_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return SPECNORM_ERR_INTERNAL;
  }
}

template <typename Fn>
specnorm_status guarded(Fn&& fn) {
  try {
    fn();
    return SPECNORM_OK;
  } catch (...) {
    return status_from_exception();
  }
}

specnorm_status require(bool ok, const char* message) {
  if (ok) return SPECNORM_OK;
  set_error(message);
  return SPECNORM_ERR_INVALID_ARGUMENT;
}

specnorm_status copy_to_buffer(const std::string& s, char* buf, size_t len) {
  if (buf == nullptr || len == 0)
    return require(false, "output buffer is null or empty");
  if (s.size() + 1 > len) return require(false, "output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return SPECNORM_OK;
}

}  // namespace

extern "C" {

const char* specnorm_status_name(specnorm_status status) {
  switch (status) {
    case SPECNORM_OK: return "ok";
    case SPECNORM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SPECNORM_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case SPECNORM_ERR_PARSE: return "parse-error";
    case SPECNORM_ERR_NONFINITE: return "non-finite";
    case SPECNORM_ERR_SINGULAR: return "singular-matrix";
    case SPECNORM_ERR_NO_CONVERGENCE: return "no-convergence";
    case SPECNORM_ERR_CONDITIONING: return "conditioning-exceeded";
    case SPECNORM_ERR_OVERFLOW: return "overflow";
    case SPECNORM_ERR_NO_SPECTRAL_GAP: return "no-spectral-gap";
    case SPECNORM_ERR_IO: return "io-error";
    case SPECNORM_ERR_FORMAT: return "format-error";
    case SPECNORM_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* specnorm_last_error(void) { return g_last_error.c_str(); }

const char* specnorm_version(void) { return specnorm::kToolVersion; }

specnorm_matrix* specnorm_matrix_create(int32_t n, const double* re,
                                        const double* im,
                                        specnorm_status* status) {
  specnorm_matrix* out = nullptr;
  const specnorm_status st = guarded([&] {
    if (n < 1) throw specnorm::InvalidArgumentError("dimension must be >= 1");
    if (re == nullptr)
      throw specnorm::InvalidArgumentError("real part array is null");
    std::vector<specnorm::cplx> entries(static_cast<std::size_t>(n) * n);
    for (std::size_t k = 0; k < entries.size(); ++k)
      entries[k] = {re[k], im == nullptr ? 0.0 : im[k]};
    out = new specnorm_matrix{
        specnorm::ComplexMatrix(n, std::move(entries))};
  });
  if (status != nullptr) *status = st;
  return out;
}

specnorm_matrix* specnorm_matrix_parse(const char* text,
                                       specnorm_status* status) {
  specnorm_matrix* out = nullptr;
  const specnorm_status st = guarded([&] {
    if (text == nullptr)
      throw specnorm::InvalidArgumentError("matrix text is null");
    out = new specnorm_matrix{specnorm::parse_matrix(text)};
  });
  if (status != nullptr) *status = st;
  return out;
}

specnorm_matrix* specnorm_matrix_read(const char* path,
                                      specnorm_status* status) {
  specnorm_matrix* out = nullptr;
  const specnorm_status st = guarded([&] {
    if (path == nullptr)
      throw specnorm::InvalidArgumentError("path is null");
    out = new specnorm_matrix{
        specnorm::parse_matrix(specnorm::read_text_file(path))};
  });
  if (status != nullptr) *status = st;
  return out;
}

specnorm_status specnorm_matrix_write(const specnorm_matrix* m,
                                      const char* path) {
  if (m == nullptr || path == nullptr)
    return require(false, "matrix or path is null");
  return guarded(
      [&] { specnorm::write_text_file(path, specnorm::format_matrix(m->m)); });
}

int32_t specnorm_matrix_dim(const specnorm_matrix* m) {
  return m == nullptr ? 0 : m->m.dim();
}

specnorm_status specnorm_matrix_entry(const specnorm_matrix* m, int32_t i,
                                      int32_t j, double* re, double* im) {
  if (m == nullptr) return require(false, "matrix is null");
  if (i < 0 || j < 0 || i >= m->m.dim() || j >= m->m.dim())
    return require(false, "entry index out of range");
  const specnorm::cplx z = m->m(i, j);
  if (re != nullptr) *re = z.real();
  if (im != nullptr) *im = z.imag();
  return SPECNORM_OK;
}

specnorm_status specnorm_matrix_digest(const specnorm_matrix* m, char* buf,
                                       size_t len) {
  if (m == nullptr) return require(false, "matrix is null");
  return copy_to_buffer(specnorm::matrix_digest(m->m), buf, len);
}

void specnorm_matrix_free(specnorm_matrix* m) { delete m; }

specnorm_status specnorm_spectrum(const specnorm_matrix* a, double* eig_re,
                                  double* eig_im, double* rho) {
  if (a == nullptr) return require(false, "matrix is null");
  return guarded([&] {
    const specnorm::Spectrum sp = specnorm::eigenvalues(a->m);
    for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
      if (eig_re != nullptr) eig_re[i] = sp.eigenvalues[i].real();
      if (eig_im != nullptr) eig_im[i] = sp.eigenvalues[i].imag();
    }
    if (rho != nullptr) *rho = sp.rho;
  });
}

specnorm_status specnorm_spectral_radius_gelfand(const specnorm_matrix* a,
                                                 int32_t k, double* out) {
  if (a == nullptr || out == nullptr)
    return require(false, "matrix or output is null");
  return guarded([&] { *out = specnorm::spectral_radius_gelfand(a->m, k); });
}

specnorm_status specnorm_spectral_norm(const specnorm_matrix* a, double tol,
                                       double* out) {
  if (a == nullptr || out == nullptr)
    return require(false, "matrix or output is null");
  return guarded([&] { *out = specnorm::spectral_norm(a->m, tol); });
}

specnorm_status specnorm_construct(const specnorm_matrix* a, double epsilon,
                                   double max_kappa, specnorm_norm** out_norm,
                                   specnorm_certificate** out_cert) {
  if (a == nullptr || out_norm == nullptr || out_cert == nullptr)
    return require(false, "matrix or output handle is null");
  return guarded([&] {
    auto [w, cert] = specnorm::construct_norm(
        a->m, epsilon, max_kappa > 0.0 ? max_kappa : 1e12);
    *out_norm = new specnorm_norm{std::move(w)};
    *out_cert = new specnorm_certificate{cert};
  });
}

specnorm_status specnorm_matrix_norm(const specnorm_norm* w,
                                     const specnorm_matrix* m, double* out) {
  if (w == nullptr || m == nullptr || out == nullptr)
    return require(false, "norm, matrix, or output is null");
  return guarded([&] { *out = specnorm::matrix_norm(w->w, m->m); });
}

specnorm_status specnorm_vector_norm(const specnorm_norm* w, const double* re,
                                     const double* im, int32_t n,
                                     double* out) {
  if (w == nullptr || re == nullptr || out == nullptr)
    return require(false, "norm, vector, or output is null");
  return guarded([&] {
    if (n < 1) throw specnorm::InvalidArgumentError("vector length must be >= 1");
    specnorm::ComplexVector x(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < x.size(); ++k)
      x[k] = {re[k], im == nullptr ? 0.0 : im[k]};
    specnorm::ensure_finite(x, "vector_norm");
    *out = specnorm::vector_norm(w->w, x);
  });
}

specnorm_status specnorm_verify(const specnorm_norm* w,
                                const specnorm_matrix* a, int32_t trials,
                                uint64_t seed,
                                specnorm_certificate** out_cert) {
  if (w == nullptr || a == nullptr || out_cert == nullptr)
    return require(false, "norm, matrix, or output handle is null");
  return guarded([&] {
    *out_cert = new specnorm_certificate{
        specnorm::verify_certificate(w->w, a->m, trials, seed)};
  });
}

int32_t specnorm_norm_dim(const specnorm_norm* w) {
  return w == nullptr ? 0 : w->w.source_dim;
}
double specnorm_norm_t(const specnorm_norm* w) {
  return w == nullptr ? 0.0 : w->w.t;
}
double specnorm_norm_epsilon(const specnorm_norm* w) {
  return w == nullptr ? 0.0 : w->w.epsilon;
}
double specnorm_norm_kappa(const specnorm_norm* w) {
  return w == nullptr ? 0.0 : w->w.kappa;
}
void specnorm_norm_free(specnorm_norm* w) { delete w; }

double specnorm_certificate_rho(const specnorm_certificate* c) {
  return c == nullptr ? 0.0 : c->c.rho;
}
double specnorm_certificate_norm_value(const specnorm_certificate* c) {
  return c == nullptr ? 0.0 : c->c.norm_value;
}
double specnorm_certificate_epsilon(const specnorm_certificate* c) {
  return c == nullptr ? 0.0 : c->c.epsilon;
}
double specnorm_certificate_t(const specnorm_certificate* c) {
  return c == nullptr ? 0.0 : c->c.t;
}
double specnorm_certificate_kappa(const specnorm_certificate* c) {
  return c == nullptr ? 0.0 : c->c.kappa;
}
double specnorm_certificate_delta_norm(const specnorm_certificate* c) {
  return c == nullptr ? 0.0 : c->c.delta_norm;
}
double specnorm_certificate_schur_residual(const specnorm_certificate* c) {
  return c == nullptr ? 0.0 : c->c.schur_residual;
}
int specnorm_certificate_verified(const specnorm_certificate* c) {
  return (c != nullptr && c->c.verified) ? 1 : 0;
}
void specnorm_certificate_free(specnorm_certificate* c) { delete c; }

specnorm_status specnorm_certificate_save(const specnorm_certificate* c,
                                          const specnorm_norm* w,
                                          const specnorm_matrix* a,
                                          const char* path) {
  if (c == nullptr || w == nullptr || a == nullptr || path == nullptr)
    return require(false, "certificate, norm, matrix, or path is null");
  return guarded([&] {
    specnorm::write_text_file(
        path, specnorm::certificate_to_json(c->c, w->w,
                                            specnorm::matrix_digest(a->m)));
  });
}

specnorm_status specnorm_certificate_load(const char* path,
                                          specnorm_norm** out_norm,
                                          specnorm_certificate** out_cert,
                                          char* digest_buf,
                                          size_t digest_len) {
  if (path == nullptr || out_norm == nullptr || out_cert == nullptr)
    return require(false, "path or output handle is null");
  return guarded([&] {
    specnorm::LoadedCertificate loaded =
        specnorm::certificate_from_json(specnorm::read_text_file(path));
    if (digest_buf != nullptr) {
      const specnorm_status st =
          copy_to_buffer(loaded.input_digest, digest_buf, digest_len);
      if (st != SPECNORM_OK)
        throw specnorm::InvalidArgumentError("digest buffer too small");
    }
    *out_norm = new specnorm_norm{std::move(loaded.norm)};
    *out_cert = new specnorm_certificate{loaded.cert};
  });
}

specnorm_status specnorm_contract_run(int32_t nodes, double edge_prob,
                                      uint64_t seed, double self_weight,
                                      double epsilon_fraction, int32_t steps,
                                      specnorm_report** out_report) {
  if (out_report == nullptr) return require(false, "output handle is null");
  return guarded([&] {
    const specnorm::Digraph g =
        specnorm::random_digraph(nodes, edge_prob, seed);
    const specnorm::ComplexMatrix w =
        specnorm::row_stochastic_weights(g, self_weight);
    const specnorm::ContractionCertificate cc =
        specnorm::certify_contraction(w, epsilon_fraction);

    // Deterministic start vector derived from the run seed.
    specnorm::SplitMix64 rng(seed ^ 0xD1B54A32D192ED03ULL);
    specnorm::ComplexVector x0(static_cast<std::size_t>(nodes));
    for (specnorm::cplx& z : x0) z = {rng.uniform(-1.0, 1.0), 0.0};

    const specnorm::ContractionReport report =
        specnorm::simulate_consensus(w, x0, steps, cc.norm);
    const bool certified =
        report.max_ratio <= cc.certified_rate * (1.0 + 1e-8);

    specnorm::ContractionRunMeta meta;
    meta.nodes = nodes;
    meta.edge_prob = edge_prob;
    meta.seed = seed;
    meta.self_weight = self_weight;
    meta.epsilon_fraction = epsilon_fraction;
    meta.steps = steps;
    *out_report = new specnorm_report{report, meta, certified};
  });
}

double specnorm_report_rho(const specnorm_report* r) {
  return r == nullptr ? 0.0 : r->report.rho;
}
double specnorm_report_certified_rate(const specnorm_report* r) {
  return r == nullptr ? 0.0 : r->report.certified_rate;
}
double specnorm_report_max_ratio(const specnorm_report* r) {
  return r == nullptr ? 0.0 : r->report.max_ratio;
}
int specnorm_report_certified(const specnorm_report* r) {
  return (r != nullptr && r->certified) ? 1 : 0;
}
int32_t specnorm_report_step_count(const specnorm_report* r) {
  return r == nullptr ? 0 : static_cast<int32_t>(r->report.step_norms.size());
}
double specnorm_report_step_norm(const specnorm_report* r, int32_t k) {
  if (r == nullptr || k < 0 ||
      k >= static_cast<int32_t>(r->report.step_norms.size()))
    return 0.0;
  return r->report.step_norms[static_cast<std::size_t>(k)];
}
int32_t specnorm_report_ratio_count(const specnorm_report* r) {
  return r == nullptr ? 0 : static_cast<int32_t>(r->report.step_ratios.size());
}
double specnorm_report_step_ratio(const specnorm_report* r, int32_t k) {
  if (r == nullptr || k < 0 ||
      k >= static_cast<int32_t>(r->report.step_ratios.size()))
    return 0.0;
  return r->report.step_ratios[static_cast<std::size_t>(k)];
}

specnorm_status specnorm_report_save(const specnorm_report* r,
                                     const char* path) {
  if (r == nullptr || path == nullptr)
    return require(false, "report or path is null");
  return guarded([&] {
    specnorm::write_text_file(
        path, specnorm::report_to_json(r->report, r->meta, r->certified));
  });
}

void specnorm_report_free(specnorm_report* r) { delete r; }

specnorm_status specnorm_vector_parse(const char* text, double** out_re,
                                      double** out_im, int32_t* out_n) {
  if (text == nullptr || out_re == nullptr || out_im == nullptr ||
      out_n == nullptr)
    return require(false, "text or output is null");
  return guarded([&] {
    const specnorm::ComplexVector v = specnorm::parse_vector(text);
    double* re = new double[v.size()];
    double* im = new double[v.size()];
    for (std::size_t k = 0; k < v.size(); ++k) {
      re[k] = v[k].real();
      im[k] = v[k].imag();
    }
    *out_re = re;
    *out_im = im;
    *out_n = static_cast<int32_t>(v.size());
  });
}

void specnorm_buffer_free(double* p) { delete[] p; }

}  // extern "C"
