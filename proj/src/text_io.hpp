#pragma once

#include <string>

#include "complex_matrix.hpp"
#include "contraction.hpp"
#include "weighted_norm.hpp"

namespace specnorm {

inline constexpr const char* kToolVersion = "specnorm 1.0.0";

// Complex literal grammar: `a`, `bi`, or `a+bi` / `a-bi`, where a and b are
// C floating-point literals (exponents allowed). Examples: `2`, `1i`,
// `0.5-0.25i`, `-3e-2+4e-2i`.
cplx parse_complex(const std::string& token, int line, int column);
std::string format_complex(cplx z);  // 17 significant digits, round-trip exact

std::string format_double(double v);  // %.17g
double parse_double_field(const std::string& s);

// Matrix text: one row per line, entries comma-separated complex literals.
// Throws ParseError (with line/column), NonFiniteError for nan/inf
// literals. The matrix must be square.
ComplexMatrix parse_matrix(const std::string& text);
std::string format_matrix(const ComplexMatrix& m);

// Vector text: complex literals separated by commas and/or newlines.
ComplexVector parse_vector(const std::string& text);

// FNV-1a 64-bit over the canonical matrix serialization; used to detect
// input substitution when re-verifying a stored certificate.
std::string matrix_digest(const ComplexMatrix& m);

// Certificate documents are JSON with lexicographically ordered keys and
// every float carried as a 17-significant-digit string, so serialization
// is byte-deterministic and round-trips are value-exact.
std::string certificate_to_json(const NormCertificate& cert,
                                const WeightedNorm& norm,
                                const std::string& input_digest);

struct LoadedCertificate {
  WeightedNorm norm;
  NormCertificate cert;
  std::string input_digest;
  std::string tool_version;
};

LoadedCertificate certificate_from_json(const std::string& text);

struct ContractionRunMeta {
  int nodes = 0;
  double edge_prob = 0.0;
  std::uint64_t seed = 0;
  double self_weight = 0.5;
  double epsilon_fraction = 0.5;
  int steps = 0;
};

std::string report_to_json(const ContractionReport& report,
                           const ContractionRunMeta& meta, bool certified);

std::string read_text_file(const std::string& path);   // IoError on failure
void write_text_file(const std::string& path, const std::string& content);

}  // namespace specnorm
