#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qident/types.hpp"

namespace qident {

// Builders for dense operators on qudit registers: permutations, total
// symmetrizers, and the reference-identification operator
//
//   D = S_{N+M}(01) S_N(2) - S_N(1) S_{N+M}(02)
//
// on the register (input copies | reference-1 copies | reference-2 copies).
// Subsystem roles are fixed by position: slots [0, M) hold the input
// copies, [M, M+N) the first reference, [M+N, M+2N) the second.

// Unitary 0/1 matrix P with P|i_0 ... i_{n-1}> moving the content of slot k
// to slot perm[k]. Satisfies P(sigma o tau) = P(sigma) P(tau).
DenseOperator permutation_operator(const TensorLayout& layout,
                                   const std::vector<int>& perm,
                                   std::size_t dim_cap = kDefaultDimCap);

// Projector onto the subspace totally symmetric in `subset` (identity on
// the rest): (1/|subset|!) sum over all permutations of the subset.
DenseOperator symmetrizer(const TensorLayout& layout,
                          const std::vector<int>& subset,
                          std::size_t dim_cap = kDefaultDimCap);

// Projector onto the totally antisymmetric subspace of the whole register:
// (1/n!) sum_pi sgn(pi) P_pi.
DenseOperator antisymmetrizer(const TensorLayout& layout,
                              std::size_t dim_cap = kDefaultDimCap);

// Identification operator for one input copy and N copies of each
// reference, on the full (2N+1)-qudit register. Hermitian and traceless.
DenseOperator build_identification_operator(int n_copies, int d,
                                            std::size_t dim_cap = kDefaultDimCap);

// Generalization to M input copies, on the full (M+2N)-qudit register.
// Reduces to build_identification_operator at M = 1.
DenseOperator build_mcopy_operator(int m_copies, int n_copies, int d,
                                   std::size_t dim_cap = kDefaultDimCap);

// Occupation-number basis of the totally symmetric subspace Sym^N(C^d).
// Basis vector j is the normalized symmetrization of the product state
// with occupation vector occupations[j]; vectors are ordered by
// lexicographically descending occupation.
class SymBasis {
 public:
  SymBasis(int n_copies, int d);

  int n_copies() const { return n_copies_; }
  int local_dim() const { return d_; }
  int dim() const { return static_cast<int>(occupations_.size()); }
  const std::vector<std::vector<int>>& occupations() const {
    return occupations_;
  }
  int index_of(const std::vector<int>& occupation) const;

  // Isometry V from Sym^N(C^d) into (C^d)^(tensor N): d^N x dim(), with
  // V^dagger V = identity and V V^dagger = the total symmetrizer.
  Eigen::MatrixXcd isometry(std::size_t dim_cap = kDefaultDimCap) const;

 private:
  int n_copies_;
  int d_;
  std::vector<std::vector<int>> occupations_;
  std::map<std::vector<int>, int> index_;
};

// Coordinates of psi^(tensor N) in the SymBasis:
// component for occupation (n_1..n_d) is sqrt(N!/prod n_k!) prod_k psi_k^{n_k}.
Eigen::VectorXcd sym_embed_power(const PureState& psi, const SymBasis& basis);

// Identification operator restricted to C^d (x) Sym^N (x) Sym^N, built
// through occupation-number bookkeeping; never materializes the full
// d^(2N+1)-dimensional register. Shares its nonzero spectrum (with
// multiplicities) with build_identification_operator.
DenseOperator build_identification_operator_sym(int n_copies, int d,
                                                std::size_t dim_cap = kDefaultDimCap);

// Tensor product of pure states, ordered first-state-most-significant.
struct EmbeddedState {
  TensorLayout layout;
  Eigen::VectorXcd amplitudes;
};
EmbeddedState embed_product_state(const std::vector<PureState>& states,
                                  std::size_t dim_cap = kDefaultDimCap);

}  // namespace qident
