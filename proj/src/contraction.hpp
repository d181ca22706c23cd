#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "complex_matrix.hpp"
#include "weighted_norm.hpp"

namespace specnorm {

// Directed graph; an edge (i, j) means j receives from i. Self-loops are
// excluded from the edge set (self-weights live in the weight matrix).
struct Digraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;
};

bool strongly_connected(const Digraph& g);

// Directed ring 0->1->...->(n-1)->0 plus each remaining ordered pair with
// probability p. The ring guarantees strong connectivity; the generator is
// deterministic in (n, p, seed).
Digraph random_digraph(int n, double p, std::uint64_t seed);

// Row-stochastic averaging weights: W[i][i] = self_weight, the remainder
// split equally among the in-neighbors of i. Requires a strongly connected
// graph so the result is primitive.
ComplexMatrix row_stochastic_weights(const Digraph& g, double self_weight);

// Left Perron vector pi (pi^T W = pi^T, entries positive, summing to 1)
// and the disagreement matrix M = W - 1 pi^T, which has zero row sums and
// rho(M) < 1 for primitive W. Throws NoConvergenceError when the Perron
// iteration stalls, which signals a non-primitive input.
struct DisagreementResult {
  ComplexMatrix m;
  ComplexVector pi;
};

DisagreementResult disagreement_matrix(const ComplexMatrix& w);

// Builds the weighted norm for the disagreement matrix with
// epsilon = epsilon_fraction * (1 - rho(M)) and returns it together with
// the certified rate rho(M) + epsilon < 1.
struct ContractionCertificate {
  WeightedNorm norm;
  double certified_rate = 0.0;
  double rho = 0.0;
  NormCertificate certificate;
};

ContractionCertificate certify_contraction(const ComplexMatrix& w,
                                           double epsilon_fraction);

struct ContractionReport {
  double rho = 0.0;
  double certified_rate = 0.0;
  std::vector<double> step_norms;   // weighted norm of the disagreement
  std::vector<double> step_ratios;  // consecutive quotients, extinct steps omitted
  double max_ratio = 0.0;
};

// Iterates x <- W x for `steps` steps and records the weighted norm of the
// disagreement d_k = x_k - 1 (pi^T x_k) at every step. Ratios whose
// denominator is below 1e-13 * kappa are omitted as numerically extinct.
ContractionReport simulate_consensus(const ComplexMatrix& w,
                                     const ComplexVector& x0, int steps,
                                     const WeightedNorm& norm);

}  // namespace specnorm
