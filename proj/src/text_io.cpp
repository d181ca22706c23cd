#include "text_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specnorm {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Parses one floating literal starting at s[pos]; advances pos.
double parse_float_at(const std::string& s, std::size_t& pos, int line,
                      int column) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin)
    throw ParseError("expected a number in complex literal '" + s + "'", line,
                     column);
  pos += static_cast<std::size_t>(end - begin);
  return v;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

json matrix_rows_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    std::string row;
    for (int j = 0; j < m.dim(); ++j) {
      if (j > 0) row += ',';
      row += format_complex(m(i, j));
    }
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_rows_json(const json& rows, const char* field) {
  if (!rows.is_array() || rows.empty())
    throw FormatError(std::string("certificate field '") + field +
                      "' must be a non-empty array of rows");
  std::string text;
  for (const auto& row : rows) {
    if (!row.is_string())
      throw FormatError(std::string("certificate field '") + field +
                        "' must contain rows as strings");
    text += row.get<std::string>();
    text += '\n';
  }
  return parse_matrix(text);
}

double double_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw FormatError(std::string("missing or non-string field '") + key + "'");
  return parse_double_field(j.at(key).get<std::string>());
}

}  // namespace

cplx parse_complex(const std::string& raw, int line, int column) {
  const std::string s = trim(raw);
  if (s.empty()) throw ParseError("empty entry", line, column);

  std::size_t pos = 0;
  const double first = parse_float_at(s, pos, line, column);

  double re = 0.0, im = 0.0;
  if (pos == s.size()) {
    re = first;  // pure real
  } else if (s[pos] == 'i' && pos + 1 == s.size()) {
    im = first;  // pure imaginary
  } else if (s[pos] == '+' || s[pos] == '-') {
    re = first;
    im = parse_float_at(s, pos, line, column);
    if (pos + 1 != s.size() || s[pos] != 'i')
      throw ParseError("expected trailing 'i' in complex literal '" + s + "'",
                       line, column);
  } else {
    throw ParseError("malformed complex literal '" + s + "'", line, column);
  }

  if (!std::isfinite(re) || !std::isfinite(im))
    throw NonFiniteError("non-finite literal at line " + std::to_string(line) +
                         ", column " + std::to_string(column));
  return {re, im};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double_field(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw FormatError("malformed numeric field '" + s + "'");
  return v;
}

std::string format_complex(cplx z) {
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) return format_double(re);
  if (re == 0.0) return format_double(im) + "i";
  std::string out = format_double(re);
  if (!std::signbit(im)) out += '+';
  out += format_double(im);
  out += 'i';
  return out;
}

ComplexMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<cplx>> rows;
  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    if (trim(raw_line).empty()) continue;
    std::vector<cplx> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = raw_line.find(',', start);
      const std::string token = raw_line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      row.push_back(parse_complex(token, line_no, static_cast<int>(start) + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged row: expected " +
                           std::to_string(rows.front().size()) + " entries, got " +
                           std::to_string(row.size()),
                       line_no, 1);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix", 1, 1);
  if (rows.size() != rows.front().size())
    throw ParseError("matrix is not square: " + std::to_string(rows.size()) +
                         " rows of " + std::to_string(rows.front().size()) +
                         " entries",
                     line_no, 1);

  const int n = static_cast<int>(rows.size());
  std::vector<cplx> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows)
    entries.insert(entries.end(), row.begin(), row.end());
  return ComplexMatrix(n, std::move(entries));
}

std::string format_matrix(const ComplexMatrix& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j > 0) out += ',';
      out += format_complex(m(i, j));
    }
    out += '\n';
  }
  return out;
}

ComplexVector parse_vector(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized)
    if (c == '\n') c = ',';
  ComplexVector v;
  std::size_t start = 0;
  int column = 1;
  while (start <= normalized.size()) {
    const std::size_t comma = normalized.find(',', start);
    const std::string token = normalized.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!trim(token).empty())
      v.push_back(parse_complex(token, 1, column));
    if (comma == std::string::npos) break;
    start = comma + 1;
    column = static_cast<int>(start) + 1;
  }
  if (v.empty()) throw ParseError("empty vector", 1, 1);
  return v;
}

std::string matrix_digest(const ComplexMatrix& m) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(format_matrix(m))));
  return buf;
}

std::string certificate_to_json(const NormCertificate& cert,
                                const WeightedNorm& norm,
                                const std::string& input_digest) {
  json doc;
  doc["delta_norm"] = format_double(cert.delta_norm);
  doc["epsilon"] = format_double(cert.epsilon);
  doc["input_digest"] = input_digest;
  doc["kappa"] = format_double(cert.kappa);
  doc["n"] = norm.source_dim;
  doc["norm_value"] = format_double(cert.norm_value);
  doc["p"] = matrix_rows_json(norm.p);
  doc["p_inv"] = matrix_rows_json(norm.p_inv);
  doc["rho"] = format_double(cert.rho);
  doc["schur_residual"] = format_double(cert.schur_residual);
  doc["t"] = format_double(cert.t);
  doc["tool_version"] = kToolVersion;
  doc["verified"] = cert.verified;
  return doc.dump(2) + "\n";
}

LoadedCertificate certificate_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("certificate must be a JSON object");

  LoadedCertificate out;
  if (!doc.contains("n") || !doc.at("n").is_number_integer())
    throw FormatError("missing or non-integer field 'n'");
  const int n = doc.at("n").get<int>();
  if (n < 1) throw FormatError("field 'n' must be >= 1");

  out.cert.delta_norm = double_field(doc, "delta_norm");
  out.cert.epsilon = double_field(doc, "epsilon");
  out.cert.kappa = double_field(doc, "kappa");
  out.cert.norm_value = double_field(doc, "norm_value");
  out.cert.rho = double_field(doc, "rho");
  out.cert.schur_residual = double_field(doc, "schur_residual");
  out.cert.t = double_field(doc, "t");
  if (!doc.contains("verified") || !doc.at("verified").is_boolean())
    throw FormatError("missing or non-boolean field 'verified'");
  out.cert.verified = doc.at("verified").get<bool>();
  if (!doc.contains("input_digest") || !doc.at("input_digest").is_string())
    throw FormatError("missing or non-string field 'input_digest'");
  out.input_digest = doc.at("input_digest").get<std::string>();
  out.tool_version = doc.value("tool_version", "");

  if (!doc.contains("p") || !doc.contains("p_inv"))
    throw FormatError("missing transform matrices 'p'/'p_inv'");
  out.norm.p = matrix_from_rows_json(doc.at("p"), "p");
  out.norm.p_inv = matrix_from_rows_json(doc.at("p_inv"), "p_inv");
  if (out.norm.p.dim() != n || out.norm.p_inv.dim() != n)
    throw FormatError("transform dimensions disagree with field 'n'");
  out.norm.t = out.cert.t;
  out.norm.epsilon = out.cert.epsilon;
  out.norm.kappa = out.cert.kappa;
  out.norm.source_dim = n;
  if (!(out.norm.epsilon > 0.0))
    throw FormatError("field 'epsilon' must be > 0");
  if (!(out.norm.t > 0.0)) throw FormatError("field 't' must be > 0");
  return out;
}

std::string report_to_json(const ContractionReport& report,
                           const ContractionRunMeta& meta, bool certified) {
  json doc;
  doc["certified"] = certified;
  doc["certified_rate"] = format_double(report.certified_rate);
  doc["edge_prob"] = format_double(meta.edge_prob);
  doc["epsilon_fraction"] = format_double(meta.epsilon_fraction);
  doc["max_ratio"] = format_double(report.max_ratio);
  doc["nodes"] = meta.nodes;
  doc["rho"] = format_double(report.rho);
  doc["seed"] = meta.seed;
  doc["self_weight"] = format_double(meta.self_weight);
  json norms = json::array();
  for (double v : report.step_norms) norms.push_back(format_double(v));
  doc["step_norms"] = norms;
  json ratios = json::array();
  for (double v : report.step_ratios) ratios.push_back(format_double(v));
  doc["step_ratios"] = ratios;
  doc["steps"] = meta.steps;
  doc["tool_version"] = kToolVersion;
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace specnorm
