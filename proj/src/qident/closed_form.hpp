#pragma once

#include <cstdint>
#include <vector>

namespace qident {

// Exact analytic results for mean discrimination and identification
// probabilities of Haar-distributed pure states. All combinatorics run in
// checked integer arithmetic; square roots are the only floating-point
// ingredients.

// Dimension of the totally symmetric subspace of n qudits: C(n+d-1, d-1).
// Throws OverflowError if the value does not fit in 64 bits.
std::uint64_t sym_dim(int n, int d);

// Mean trace distance of two independent Haar-random pure states:
// (d-1)/(d-1/2).
double mean_trace_distance(int d);

// Mean optimal discrimination probability: 1/2 + (d-1)/(2d-1).
double p_disc_mean(int d);

// Mean optimal identification probability with a single copy of each
// reference state: 1/2 + sqrt(3)(d-1)/(6d).
double p_ident_n1(int d);

// Positive eigenvalue magnitude sqrt(1 - ((J+1/2)/(N+1))^2) of the qubit
// identification operator in the total-spin-J block. J is passed doubled
// (two_j = 2J) and must be an odd integer in [1, 2N-1].
double delta_qubit(int two_j, int n_copies);

// Two-row Young diagram [lambda1, lambda2] with lambda1+lambda2 = 2N+1.
struct TwoRowDiagram {
  int lambda1 = 0;
  int lambda2 = 0;
  int n_copies = 0;

  static TwoRowDiagram from_lambda1(int lambda1, int n_copies);
  bool valid() const;
};

// Multiplicity of the two-row irreducible representation on (C^d)^(2N+1):
//   (lambda1+d-1)! (lambda2+d-2)! (lambda1-lambda2+1)
//   -------------------------------------------------
//        (d-1)! (d-2)! (lambda1+1)! lambda2!
// evaluated through binomial factors to stay in range.
std::uint64_t two_row_multiplicity(const TwoRowDiagram& diagram, int d);

struct ProbabilityTerm {
  int lambda1 = 0;
  int lambda2 = 0;
  std::uint64_t multiplicity = 0;
  double delta = 0.0;  // positive eigenvalue of the block
};

struct ProbabilityResult {
  double value = 0.0;
  std::vector<ProbabilityTerm> terms;  // ordered by ascending lambda1
};

// Mean identification probability for N reference copies in dimension d:
//   1/2 + (1/(2 d_{N+1} d_N)) sum_{lambda1=N+1}^{2N} m * delta.
ProbabilityResult p_ident_general(int n_copies, int d);

// Qubit specialization, summed directly over total spin J.
double p_ident_qubit(int n_copies);

// Large-N limit of p_ident_general(., d); equals p_disc_mean(d).
double p_ident_limit(int d);

}  // namespace qident
