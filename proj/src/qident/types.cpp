#include "qident/types.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qident {

std::size_t TensorLayout::total_dim() const {
  if (n < 1) {
    throw ArgumentError("tensor layout needs at least one subsystem, got n=" +
                        std::to_string(n));
  }
  if (d < 2) {
    throw ArgumentError("local dimension must be at least 2, got d=" +
                        std::to_string(d));
  }
  std::size_t dim = 1;
  const std::size_t limit = std::numeric_limits<std::size_t>::max();
  for (int k = 0; k < n; ++k) {
    if (dim > limit / static_cast<std::size_t>(d)) {
      throw OverflowError("d^n does not fit in size_t for d=" +
                          std::to_string(d) + ", n=" + std::to_string(n));
    }
    dim *= static_cast<std::size_t>(d);
  }
  return dim;
}

void TensorLayout::check_cap(std::size_t dim_cap) const {
  const std::size_t dim = total_dim();
  if (dim > dim_cap) {
    throw SizeError("total dimension " + std::to_string(dim) + " (d=" +
                    std::to_string(d) + ", n=" + std::to_string(n) +
                    ") exceeds the cap of " + std::to_string(dim_cap));
  }
}

bool DenseOperator::is_uniform_register() const {
  if (factor_dims.empty()) return false;
  for (int f : factor_dims) {
    if (f != factor_dims.front()) return false;
  }
  return true;
}

TensorLayout DenseOperator::layout() const {
  if (!is_uniform_register()) {
    throw ArgumentError(
        "operator does not act on a uniform qudit register; factor "
        "dimensions are mixed");
  }
  return TensorLayout{static_cast<int>(factor_dims.size()),
                      factor_dims.front()};
}

PureState make_pure_state(Eigen::VectorXcd amplitudes) {
  const int d = static_cast<int>(amplitudes.size());
  if (d < 2) {
    throw ArgumentError("pure state needs dimension >= 2, got " +
                        std::to_string(d));
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw ArgumentError("pure state amplitudes are not unit norm (|norm-1| = " +
                        std::to_string(std::abs(norm - 1.0)) + ")");
  }
  return PureState{d, std::move(amplitudes)};
}

double max_abs(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  const double defect = max_abs(m - m.adjoint());
  return defect <= rel_tol * std::max(scale, 1e-300);
}

}  // namespace qident
