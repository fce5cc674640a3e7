#pragma once

// Seeded random matrices for property tests.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace test_support {

inline Eigen::MatrixXcd random_complex_gaussian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      g(r, c) = std::complex<double>(normal(rng), normal(rng));
    }
  }
  return g;
}

inline Eigen::MatrixXcd random_hermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXcd g = random_complex_gaussian(dim, rng);
  return 0.5 * (g + g.adjoint());
}

// Haar-ish unitary: QR of a complex Gaussian matrix with the usual phase
// fix on the diagonal of R.
inline Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXcd g = random_complex_gaussian(dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const std::complex<double> rkk = r(k, k);
    if (std::abs(rkk) > 0.0) q.col(k) *= rkk / std::abs(rkk);
  }
  return q;
}

// Feasible measurement element: U diag(u_1..u_dim) U^dagger, u_i in [0,1].
inline Eigen::MatrixXcd random_povm_element(int dim, std::uint64_t seed) {
  const Eigen::MatrixXcd u = random_unitary(dim, seed);
  std::mt19937_64 rng(seed ^ 0x5851F42D4C957F2DULL);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd diag(dim);
  for (int k = 0; k < dim; ++k) diag(k) = uniform(rng);
  return u * diag.asDiagonal() * u.adjoint();
}

}  // namespace test_support
