#include "qident/spectral.hpp"

#include <cmath>
#include <string>

#include "qident/closed_form.hpp"
#include "qident/errors.hpp"

namespace qident {

EigenDecomposition eig_hermitian(const DenseOperator& a) {
  if (a.entries.rows() != a.entries.cols()) {
    throw ContractError("eigendecomposition needs a square matrix");
  }
  if (!is_hermitian(a.entries)) {
    throw ContractError("operator is not Hermitian within 1e-10 relative");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.entries);
  if (solver.info() != Eigen::Success) {
    throw ContractError("Hermitian eigensolver failed to converge");
  }
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

double trace_norm(const DenseOperator& a) {
  const auto decomposition = eig_hermitian(a);
  return decomposition.eigenvalues.cwiseAbs().sum();
}

DenseOperator positive_part_projector(const DenseOperator& a, double tol) {
  const auto decomposition = eig_hermitian(a);
  if (tol <= 0.0) {
    tol = 1e-9 * max_abs(a.entries);
  }
  const Eigen::Index dim = a.dim();
  Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (decomposition.eigenvalues(k) > tol) {
      projector.noalias() += decomposition.eigenvectors.col(k) *
                             decomposition.eigenvectors.col(k).adjoint();
    }
  }
  return DenseOperator{a.factor_dims, std::move(projector), true};
}

Povm build_optimal_povm(const DenseOperator& d_op, double tol) {
  const double trace = std::abs(d_op.entries.trace());
  const double scale = std::max(max_abs(d_op.entries), 1e-300);
  if (trace > 1e-9 * scale * static_cast<double>(d_op.dim())) {
    throw ContractError("optimal measurement needs a traceless operator; "
                        "tr = " + std::to_string(trace));
  }
  DenseOperator e1 = positive_part_projector(d_op, tol);
  DenseOperator e2{d_op.factor_dims,
                   Eigen::MatrixXcd::Identity(d_op.dim(), d_op.dim()) - e1.entries,
                   true};
  return Povm{std::move(e1), std::move(e2)};
}

double probability_from_operator(const DenseOperator& d_op, int m_copies,
                                 int n_copies, int d) {
  if (m_copies < 1 || n_copies < 1 || d < 2) {
    throw ArgumentError("need M >= 1, N >= 1, d >= 2");
  }
  const std::uint64_t d_n = sym_dim(n_copies, d);
  const std::uint64_t d_nm = sym_dim(n_copies + m_copies, d);

  const std::vector<int> full_dims(
      static_cast<std::size_t>(m_copies + 2 * n_copies), d);
  const std::vector<int> restricted_dims{d, static_cast<int>(d_n),
                                         static_cast<int>(d_n)};
  const bool is_full = d_op.factor_dims == full_dims;
  const bool is_restricted =
      m_copies == 1 && d_op.factor_dims == restricted_dims;
  if (!is_full && !is_restricted) {
    throw ArgumentError("operator layout does not match (M=" +
                        std::to_string(m_copies) + ", N=" +
                        std::to_string(n_copies) + ", d=" + std::to_string(d) +
                        ")");
  }
  return 0.5 + trace_norm(d_op) /
                   (4.0 * static_cast<double>(d_nm) * static_cast<double>(d_n));
}

}  // namespace qident
