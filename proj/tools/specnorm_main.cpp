// Command-line front end. Everything functional goes through the shared
// library's C API; this file only handles argument parsing, file plumbing,
// and machine-readable output (JSON on stdout, diagnostics on stderr).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "specnorm/specnorm.h"

namespace {

using nlohmann::json;

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("CONTRACTION_NORM_LOG");
  if (env == nullptr) return LogLevel::kInfo;
  const std::string v(env);
  if (v == "quiet") return LogLevel::kQuiet;
  if (v == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::kInfo) std::cerr << "[info] " << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::kDebug)
    std::cerr << "[debug] " << message << "\n";
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void die(specnorm_status status) {
  std::cerr << "error (" << specnorm_status_name(status)
            << "): " << specnorm_last_error() << "\n";
  std::exit(2);
}

void check(specnorm_status status) {
  if (status != SPECNORM_OK) die(status);
}

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error (io-error): cannot open '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct MatrixHandle {
  specnorm_matrix* ptr = nullptr;
  ~MatrixHandle() { specnorm_matrix_free(ptr); }
};

struct NormHandle {
  specnorm_norm* ptr = nullptr;
  ~NormHandle() { specnorm_norm_free(ptr); }
};

struct CertHandle {
  specnorm_certificate* ptr = nullptr;
  ~CertHandle() { specnorm_certificate_free(ptr); }
};

struct ReportHandle {
  specnorm_report* ptr = nullptr;
  ~ReportHandle() { specnorm_report_free(ptr); }
};

void load_matrix(const std::string& path, MatrixHandle& out) {
  specnorm_status st = SPECNORM_OK;
  out.ptr = specnorm_matrix_read(path.c_str(), &st);
  if (out.ptr == nullptr) die(st);
  log_debug("loaded " + std::to_string(specnorm_matrix_dim(out.ptr)) + "x" +
            std::to_string(specnorm_matrix_dim(out.ptr)) + " matrix from " +
            path);
}

json certificate_json(const specnorm_certificate* cert) {
  json j;
  j["delta_norm"] = fmt17(specnorm_certificate_delta_norm(cert));
  j["epsilon"] = fmt17(specnorm_certificate_epsilon(cert));
  j["kappa"] = fmt17(specnorm_certificate_kappa(cert));
  j["norm_value"] = fmt17(specnorm_certificate_norm_value(cert));
  j["rho"] = fmt17(specnorm_certificate_rho(cert));
  j["schur_residual"] = fmt17(specnorm_certificate_schur_residual(cert));
  j["t"] = fmt17(specnorm_certificate_t(cert));
  j["verified"] = specnorm_certificate_verified(cert) != 0;
  return j;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified weighted spectral norms and contraction reports"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(specnorm_version()));

  std::string input, output, cert_path, matrix_path, vector_path;
  double epsilon = 0.0;
  double max_kappa = 1e12;
  int trials = 1000;
  std::uint64_t seed = 0;
  int gelfand_k = 7;
  int nodes = 0;
  double edge_prob = 0.0;
  double self_weight = 0.5;
  double epsilon_fraction = 0.5;
  int steps = 0;

  CLI::App* construct = app.add_subcommand(
      "construct", "build a certified weighted norm for a matrix");
  construct->add_option("--input", input, "matrix file")->required();
  construct->add_option("--epsilon", epsilon, "accuracy target (> 0)")
      ->required();
  construct->add_option("--max-kappa", max_kappa,
                        "conditioning cap for the transform");
  construct->add_option("--output", output, "certificate file")->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "re-verify a stored certificate against a matrix");
  verify->add_option("--input", input, "matrix file")->required();
  verify->add_option("--certificate", cert_path, "certificate file")
      ->required();
  verify->add_option("--trials", trials, "random consistency trials");
  verify->add_option("--seed", seed, "trial seed");

  CLI::App* norm_cmd = app.add_subcommand(
      "norm", "evaluate the stored norm on a matrix or vector");
  norm_cmd->add_option("--certificate", cert_path, "certificate file")
      ->required();
  CLI::Option* mopt = norm_cmd->add_option("--matrix", matrix_path,
                                           "matrix file to evaluate");
  CLI::Option* vopt = norm_cmd->add_option("--vector", vector_path,
                                           "vector file to evaluate");
  mopt->excludes(vopt);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "eigenvalues, spectral radius, and the squaring cross-check");
  spectrum->add_option("--input", input, "matrix file")->required();
  spectrum->add_option("--gelfand-k", gelfand_k, "number of squarings");

  CLI::App* contract = app.add_subcommand(
      "contract", "simulate certified consensus contraction on a random digraph");
  contract->add_option("--nodes", nodes, "number of agents (>= 2)")->required();
  contract->add_option("--edge-prob", edge_prob, "extra edge probability")
      ->required();
  contract->add_option("--seed", seed, "graph and start-vector seed")
      ->required();
  contract->add_option("--self-weight", self_weight, "diagonal weight");
  contract->add_option("--epsilon-fraction", epsilon_fraction,
                       "fraction of the spectral gap given to epsilon");
  contract->add_option("--steps", steps, "simulation steps")->required();
  contract->add_option("--output", output, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << specnorm_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (construct->parsed()) {
    MatrixHandle a;
    load_matrix(input, a);
    NormHandle norm;
    CertHandle built;
    check(specnorm_construct(a.ptr, epsilon, max_kappa, &norm.ptr, &built.ptr));
    log_info("selected t=" + fmt17(specnorm_norm_t(norm.ptr)) +
             ", kappa=" + fmt17(specnorm_norm_kappa(norm.ptr)));
    CertHandle cert;
    check(specnorm_verify(norm.ptr, a.ptr, trials, seed, &cert.ptr));
    check(specnorm_certificate_save(cert.ptr, norm.ptr, a.ptr, output.c_str()));
    json out = certificate_json(cert.ptr);
    out["certificate_file"] = output;
    std::cout << out.dump(2) << "\n";
    return specnorm_certificate_verified(cert.ptr) ? 0 : 1;
  }

  if (verify->parsed()) {
    MatrixHandle a;
    load_matrix(input, a);
    NormHandle norm;
    CertHandle stored;
    char stored_digest[64] = {0};
    check(specnorm_certificate_load(cert_path.c_str(), &norm.ptr, &stored.ptr,
                                    stored_digest, sizeof(stored_digest)));
    char digest[64] = {0};
    check(specnorm_matrix_digest(a.ptr, digest, sizeof(digest)));
    const bool digest_match = std::string(digest) == stored_digest;

    json out;
    out["digest_match"] = digest_match;
    bool ok = digest_match;
    if (digest_match) {
      CertHandle fresh;
      check(specnorm_verify(norm.ptr, a.ptr, trials, seed, &fresh.ptr));
      const bool fields_match =
          close_rel(specnorm_certificate_norm_value(fresh.ptr),
                    specnorm_certificate_norm_value(stored.ptr), 1e-9) &&
          close_rel(specnorm_certificate_rho(fresh.ptr),
                    specnorm_certificate_rho(stored.ptr), 1e-9) &&
          close_rel(specnorm_certificate_delta_norm(fresh.ptr),
                    specnorm_certificate_delta_norm(stored.ptr), 1e-9) &&
          specnorm_certificate_epsilon(fresh.ptr) ==
              specnorm_certificate_epsilon(stored.ptr) &&
          close_rel(specnorm_certificate_t(fresh.ptr),
                    specnorm_certificate_t(stored.ptr), 1e-12) &&
          specnorm_certificate_verified(stored.ptr) != 0;
      const bool fresh_ok = specnorm_certificate_verified(fresh.ptr) != 0;
      out["fields_match"] = fields_match;
      out["recomputed"] = certificate_json(fresh.ptr);
      ok = fields_match && fresh_ok;
    } else {
      log_info("input digest does not match the digest stored in the "
               "certificate");
    }
    out["verified"] = ok;
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
  }

  if (norm_cmd->parsed()) {
    if (matrix_path.empty() == vector_path.empty()) {
      std::cerr << "usage error: exactly one of --matrix/--vector is required\n";
      return 2;
    }
    NormHandle norm;
    CertHandle stored;
    check(specnorm_certificate_load(cert_path.c_str(), &norm.ptr, &stored.ptr,
                                    nullptr, 0));
    json out;
    double value = 0.0;
    if (!matrix_path.empty()) {
      MatrixHandle m;
      load_matrix(matrix_path, m);
      check(specnorm_matrix_norm(norm.ptr, m.ptr, &value));
      out["kind"] = "matrix";
    } else {
      const std::string text = read_file_or_die(vector_path);
      double* re = nullptr;
      double* im = nullptr;
      int32_t n = 0;
      check(specnorm_vector_parse(text.c_str(), &re, &im, &n));
      const specnorm_status st =
          specnorm_vector_norm(norm.ptr, re, im, n, &value);
      specnorm_buffer_free(re);
      specnorm_buffer_free(im);
      check(st);
      out["kind"] = "vector";
    }
    out["value"] = fmt17(value);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (spectrum->parsed()) {
    MatrixHandle a;
    load_matrix(input, a);
    const int32_t n = specnorm_matrix_dim(a.ptr);
    std::vector<double> re(static_cast<std::size_t>(n)),
        im(static_cast<std::size_t>(n));
    double rho = 0.0;
    check(specnorm_spectrum(a.ptr, re.data(), im.data(), &rho));
    double gelfand = 0.0;
    check(specnorm_spectral_radius_gelfand(a.ptr, gelfand_k, &gelfand));
    json out;
    json eigs = json::array();
    for (int32_t i = 0; i < n; ++i) {
      const double x = re[static_cast<std::size_t>(i)];
      const double y = im[static_cast<std::size_t>(i)];
      std::string s = fmt17(x);
      if (y != 0.0) {
        if (!std::signbit(y)) s += "+";
        s += fmt17(y) + "i";
      }
      eigs.push_back(s);
    }
    out["agreement"] = std::abs(gelfand - rho) <= 0.05 * std::max(1.0, rho);
    out["eigenvalues"] = eigs;
    out["gelfand"] = fmt17(gelfand);
    out["gelfand_k"] = gelfand_k;
    out["rho"] = fmt17(rho);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (contract->parsed()) {
    ReportHandle report;
    check(specnorm_contract_run(nodes, edge_prob, seed, self_weight,
                                epsilon_fraction, steps, &report.ptr));
    check(specnorm_report_save(report.ptr, output.c_str()));
    log_info("certified rate " +
             fmt17(specnorm_report_certified_rate(report.ptr)) +
             ", max observed ratio " +
             fmt17(specnorm_report_max_ratio(report.ptr)));
    json out;
    out["certified"] = specnorm_report_certified(report.ptr) != 0;
    out["certified_rate"] = fmt17(specnorm_report_certified_rate(report.ptr));
    out["max_ratio"] = fmt17(specnorm_report_max_ratio(report.ptr));
    out["report_file"] = output;
    out["rho"] = fmt17(specnorm_report_rho(report.ptr));
    std::cout << out.dump(2) << "\n";
    return specnorm_report_certified(report.ptr) ? 0 : 1;
  }

  return 2;
}
