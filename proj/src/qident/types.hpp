#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qident/errors.hpp"

namespace qident {

using Complex = std::complex<double>;

// Largest total dimension a dense operator may have unless the caller
// raises the cap explicitly (storage is O(dim^2)).
inline constexpr std::size_t kDefaultDimCap = 4096;

// A register of n subsystems, each of local dimension d.
//
// Basis index convention (fixed project-wide): the composite index of
// |i_0 i_1 ... i_{n-1}> is sum_k i_k * d^(n-1-k), i.e. subsystem 0 is the
// most significant digit.
struct TensorLayout {
  int n = 0;  // subsystem count, >= 1
  int d = 0;  // local dimension, >= 2

  // d^n, overflow-checked. Throws ArgumentError for invalid n or d.
  std::size_t total_dim() const;

  // Throws SizeError if total_dim() exceeds dim_cap.
  void check_cap(std::size_t dim_cap) const;
};

// Dense square operator on a tensor-product space. factor_dims lists the
// local dimension of every tensor factor; for operators on a plain qudit
// register it is {d, d, ..., d}, while symmetric-subspace-restricted
// operators carry mixed factors such as {d, d_N, d_N}.
struct DenseOperator {
  std::vector<int> factor_dims;
  Eigen::MatrixXcd entries;
  bool hermitian_hint = false;

  Eigen::Index dim() const { return entries.rows(); }

  // True when every factor has the same local dimension.
  bool is_uniform_register() const;

  // The (n, d) layout of a uniform register. Throws ArgumentError when the
  // factors are mixed.
  TensorLayout layout() const;
};

// Unit-norm pure state on C^d.
struct PureState {
  int d = 0;
  Eigen::VectorXcd amplitudes;
};

// Validates dimension and unit norm (within 1e-12) and returns the state.
PureState make_pure_state(Eigen::VectorXcd amplitudes);

// Largest |entry| of a matrix; 0 for empty matrices.
double max_abs(const Eigen::MatrixXcd& m);

// Max-norm Hermiticity defect check: max|A - A^dagger| <= rel_tol * max|A|.
bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol = 1e-10);

}  // namespace qident
