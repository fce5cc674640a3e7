#pragma once

#include <Eigen/Dense>

#include "qident/types.hpp"

namespace qident {

// Hermitian spectral analysis: eigendecomposition, trace norm, spectral
// projectors, the optimal two-outcome measurement, and the conversion from
// trace norm to identification probability.

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // orthonormal columns, matching order
};

// Full spectrum of a Hermitian operator. Throws ContractError when the
// input fails the Hermiticity check (max|A - A^dagger| <= 1e-10 max|A|).
EigenDecomposition eig_hermitian(const DenseOperator& a);

// Sum of absolute eigenvalues.
double trace_norm(const DenseOperator& a);

// Projector onto the span of eigenvectors with eigenvalue > tol.
// tol <= 0 selects the default 1e-9 * max|entries|.
DenseOperator positive_part_projector(const DenseOperator& a, double tol = -1.0);

// Two-outcome measurement {E1, E2}, E1 + E2 = identity, 0 <= Ei <= 1.
struct Povm {
  DenseOperator e1;
  DenseOperator e2;
};

// Optimal measurement for a Hermitian traceless operator: E1 is the
// projector onto the strictly positive eigenspace (zero-eigenvalue weight
// goes entirely to E2), E2 = identity - E1. Attains
// tr[E1 D] = (1/2) tr|D|, the maximum of tr[E D] over 0 <= E <= 1.
// Throws ContractError when D has a nonzero trace.
Povm build_optimal_povm(const DenseOperator& d_op, double tol = -1.0);

// Identification probability from the operator spectrum:
//   1/2 + tr|D| / (4 d_{N+M} d_N).
// Accepts the full-register operator for (M, N, d) or, at M = 1, the
// symmetric-subspace-restricted build; anything else is an argument error.
double probability_from_operator(const DenseOperator& d_op, int m_copies,
                                 int n_copies, int d);

}  // namespace qident
