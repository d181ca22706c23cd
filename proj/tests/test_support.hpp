#pragma once

#include <cstdint>
#include <vector>

#include "complex_matrix.hpp"

namespace specnorm::testing {

// Entries uniform in the complex square [-scale, scale]^2.
ComplexMatrix random_matrix(int n, std::uint64_t seed, double scale = 1.0);

// Random matrix rescaled to the requested Frobenius norm.
ComplexMatrix random_matrix_with_frobenius(int n, std::uint64_t seed,
                                           double frob);

// Unitary factor of the Schur form of a random matrix; unitary to roughly
// n * machine epsilon.
ComplexMatrix random_unitary(int n, std::uint64_t seed);

// I + r * R with ||R||_2 <= 1, invertible with condition number at most
// (1 + r) / (1 - r).
ComplexMatrix random_well_conditioned(int n, std::uint64_t seed, double r);

// Random upper triangular matrix.
ComplexMatrix random_upper_triangular(int n, std::uint64_t seed,
                                      double scale = 1.0);

ComplexMatrix jordan_block(int n, cplx lambda, double superdiagonal);

ComplexVector random_vector(int n, std::uint64_t seed, double scale = 1.0);

// Smallest over all pairings of the maximum pairwise distance between the
// two eigenvalue lists (brute force; intended for n <= 8).
double eigenvalue_matching_distance(const std::vector<cplx>& a,
                                    const std::vector<cplx>& b);

ComplexMatrix inverse_small(const ComplexMatrix& a);  // Gauss-Jordan, tests only

}  // namespace specnorm::testing
