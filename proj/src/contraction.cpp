#include "contraction.hpp"

#include <algorithm>
#include <cmath>

#include "prng.hpp"
#include "schur.hpp"

namespace specnorm {

namespace {

constexpr double kPerronTol = 1e-14;
constexpr long kPerronMaxIterations = 100000;

std::vector<int> reachable(int n, const std::set<std::pair<int, int>>& edges,
                           bool reversed) {
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : edges) {
      const int from = reversed ? b : a;
      const int to = reversed ? a : b;
      if (from == u && !seen[static_cast<std::size_t>(to)]) {
        seen[static_cast<std::size_t>(to)] = 1;
        stack.push_back(to);
      }
    }
  }
  return seen;
}

void require_row_stochastic(const ComplexMatrix& w, const char* who) {
  const int n = w.dim();
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const cplx z = w(i, j);
      if (std::abs(z.imag()) > 1e-14 || z.real() < -1e-14)
        throw InvalidArgumentError(std::string(who) +
                                   ": weights must be real and nonnegative");
      row_sum += z.real();
    }
    if (std::abs(row_sum - 1.0) > 1e-12)
      throw InvalidArgumentError(std::string(who) + ": rows must sum to 1");
  }
}

}  // namespace

bool strongly_connected(const Digraph& g) {
  if (g.n < 1) return false;
  if (g.n == 1) return true;
  const std::vector<int> fwd = reachable(g.n, g.edges, false);
  const std::vector<int> bwd = reachable(g.n, g.edges, true);
  for (int i = 0; i < g.n; ++i)
    if (!fwd[static_cast<std::size_t>(i)] || !bwd[static_cast<std::size_t>(i)])
      return false;
  return true;
}

Digraph random_digraph(int n, double p, std::uint64_t seed) {
  if (n < 2) throw InvalidArgumentError("random_digraph: n must be >= 2");
  if (p < 0.0 || p > 1.0)
    throw InvalidArgumentError("random_digraph: p must be in [0, 1]");
  Digraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.edges.emplace(i, (i + 1) % n);
  SplitMix64 rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (j == (i + 1) % n) continue;  // ring edge, already present
      if (rng.uniform01() < p) g.edges.emplace(i, j);
    }
  }
  return g;
}

ComplexMatrix row_stochastic_weights(const Digraph& g, double self_weight) {
  if (!(self_weight > 0.0 && self_weight < 1.0))
    throw InvalidArgumentError(
        "row_stochastic_weights: self_weight must be in (0, 1)");
  if (!strongly_connected(g))
    throw InvalidArgumentError(
        "row_stochastic_weights: graph must be strongly connected");
  const int n = g.n;
  ComplexMatrix w(n);
  std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
  for (const auto& [from, to] : g.edges)
    ++in_degree[static_cast<std::size_t>(to)];
  for (int i = 0; i < n; ++i) w(i, i) = self_weight;
  for (const auto& [from, to] : g.edges)
    w(to, from) = (1.0 - self_weight) / in_degree[static_cast<std::size_t>(to)];
  return w;
}

DisagreementResult disagreement_matrix(const ComplexMatrix& w) {
  require_row_stochastic(w, "disagreement_matrix");
  const int n = w.dim();

  // Left Perron vector by power iteration on W^T, renormalized to sum 1.
  std::vector<double> pi(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<double> next(static_cast<std::size_t>(n));
  bool converged = false;
  for (long it = 0; it < kPerronMaxIterations; ++it) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += w(i, j).real() * pi[static_cast<std::size_t>(i)];
      next[static_cast<std::size_t>(j)] = acc;
    }
    double sum = 0.0;
    for (double v : next) sum += v;
    for (double& v : next) v /= sum;
    double diff = 0.0;
    for (int j = 0; j < n; ++j)
      diff += std::abs(next[static_cast<std::size_t>(j)] -
                       pi[static_cast<std::size_t>(j)]);
    pi.swap(next);
    if (diff <= kPerronTol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergenceError(
        "disagreement_matrix: Perron iteration did not converge "
        "(is the weight matrix primitive?)");
  for (double v : pi)
    if (!(v > 0.0))
      throw NoConvergenceError(
          "disagreement_matrix: Perron vector has a non-positive entry");

  DisagreementResult out;
  out.m = ComplexMatrix(n);
  out.pi.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    out.pi[static_cast<std::size_t>(j)] = pi[static_cast<std::size_t>(j)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.m(i, j) = w(i, j).real() - pi[static_cast<std::size_t>(j)];
  return out;
}

ContractionCertificate certify_contraction(const ComplexMatrix& w,
                                           double epsilon_fraction) {
  if (!(epsilon_fraction > 0.0 && epsilon_fraction < 1.0))
    throw InvalidArgumentError(
        "certify_contraction: epsilon_fraction must be in (0, 1)");
  const DisagreementResult dis = disagreement_matrix(w);
  const double rho = eigenvalues(dis.m).rho;
  if (rho >= 1.0 - 1e-10)
    throw NoSpectralGapError(
        "certify_contraction: disagreement matrix has no spectral gap");
  const double epsilon = epsilon_fraction * (1.0 - rho);
  auto [norm, cert] = construct_norm(dis.m, epsilon);
  ContractionCertificate out;
  out.norm = std::move(norm);
  out.certified_rate = rho + epsilon;
  out.rho = rho;
  out.certificate = cert;
  return out;
}

ContractionReport simulate_consensus(const ComplexMatrix& w,
                                     const ComplexVector& x0, int steps,
                                     const WeightedNorm& norm) {
  if (steps < 1)
    throw InvalidArgumentError("simulate_consensus: steps must be >= 1");
  if (static_cast<int>(x0.size()) != w.dim() || w.dim() != norm.source_dim)
    throw DimensionMismatchError("simulate_consensus: dimension mismatch");
  ensure_finite(x0, "simulate_consensus");

  const DisagreementResult dis = disagreement_matrix(w);
  const int n = w.dim();

  const auto disagreement = [&](const ComplexVector& x) {
    cplx mean{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      mean += dis.pi[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    ComplexVector d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] =
        x[static_cast<std::size_t>(i)] - mean;
    return d;
  };

  ContractionReport report;
  report.rho = eigenvalues(dis.m).rho;
  report.certified_rate = report.rho + norm.epsilon;

  ComplexVector x = x0;
  report.step_norms.push_back(vector_norm(norm, disagreement(x)));
  for (int k = 0; k < steps; ++k) {
    x = mat_vec(w, x);
    report.step_norms.push_back(vector_norm(norm, disagreement(x)));
  }

  const double extinct = 1e-13 * norm.kappa;
  for (std::size_t k = 0; k + 1 < report.step_norms.size(); ++k) {
    const double denom = report.step_norms[k];
    if (denom < extinct) continue;
    report.step_ratios.push_back(report.step_norms[k + 1] / denom);
  }
  report.max_ratio = report.step_ratios.empty()
                         ? 0.0
                         : *std::max_element(report.step_ratios.begin(),
                                             report.step_ratios.end());
  return report;
}

}  // namespace specnorm
