#include "qident/closed_form.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qident/errors.hpp"

namespace qident {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > ~static_cast<u128>(0) / a) {
    throw OverflowError("128-bit overflow in exact combinatorics");
  }
  return a * b;
}

std::uint64_t to_u64(u128 v, const char* what) {
  if (v > static_cast<u128>(kU64Max)) {
    throw OverflowError(std::string(what) + " exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

// C(n, k) exactly; multiply/divide one factor at a time so every
// intermediate is itself a binomial coefficient.
u128 binomial_u128(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  u128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = checked_mul(r, static_cast<u128>(n - k + i));
    r /= static_cast<u128>(i);
  }
  return r;
}

void require_d(int d) {
  if (d < 2) {
    throw ArgumentError("dimension must be at least 2, got d=" +
                        std::to_string(d));
  }
}

void require_n_copies(int n_copies) {
  if (n_copies < 1) {
    throw ArgumentError("reference copy count must be at least 1, got N=" +
                        std::to_string(n_copies));
  }
}

}  // namespace

std::uint64_t sym_dim(int n, int d) {
  require_d(d);
  if (n < 0) {
    throw ArgumentError("sym_dim needs n >= 0, got n=" + std::to_string(n));
  }
  return to_u64(binomial_u128(n + d - 1, d - 1), "symmetric-subspace dimension");
}

double mean_trace_distance(int d) {
  require_d(d);
  return (d - 1.0) / (d - 0.5);
}

double p_disc_mean(int d) {
  require_d(d);
  return 0.5 + (d - 1.0) / (2.0 * d - 1.0);
}

double p_ident_n1(int d) {
  require_d(d);
  return 0.5 + std::sqrt(3.0) * (d - 1.0) / (6.0 * d);
}

double delta_qubit(int two_j, int n_copies) {
  require_n_copies(n_copies);
  if (two_j < 1 || two_j > 2 * n_copies - 1 || two_j % 2 == 0) {
    throw ArgumentError("J must be a half-integer in [1/2, N-1/2]; got 2J=" +
                        std::to_string(two_j) + " for N=" +
                        std::to_string(n_copies));
  }
  const double x = (two_j + 1) / (2.0 * (n_copies + 1));
  return std::sqrt(1.0 - x * x);
}

TwoRowDiagram TwoRowDiagram::from_lambda1(int lambda1, int n_copies) {
  return TwoRowDiagram{lambda1, 2 * n_copies + 1 - lambda1, n_copies};
}

bool TwoRowDiagram::valid() const {
  return n_copies >= 1 && lambda1 + lambda2 == 2 * n_copies + 1 &&
         lambda1 >= n_copies + 1 && lambda1 <= 2 * n_copies && lambda2 >= 1;
}

std::uint64_t two_row_multiplicity(const TwoRowDiagram& diagram, int d) {
  require_d(d);
  if (!diagram.valid()) {
    throw ArgumentError("invalid two-row diagram [" +
                        std::to_string(diagram.lambda1) + "," +
                        std::to_string(diagram.lambda2) + "] for N=" +
                        std::to_string(diagram.n_copies));
  }
  // m = C(l1+d-1, d-1) * C(l2+d-2, d-2) * (l1-l2+1) / (l1+1); the division
  // is exact (the product counts (l1+1) copies of the integer m).
  const int l1 = diagram.lambda1;
  const int l2 = diagram.lambda2;
  u128 num = binomial_u128(l1 + d - 1, d - 1);
  num = checked_mul(num, binomial_u128(l2 + d - 2, d - 2));
  num = checked_mul(num, static_cast<u128>(l1 - l2 + 1));
  const u128 den = static_cast<u128>(l1 + 1);
  if (num % den != 0) {
    throw std::logic_error("two-row multiplicity was not an integer");
  }
  return to_u64(num / den, "two-row multiplicity");
}

ProbabilityResult p_ident_general(int n_copies, int d) {
  require_n_copies(n_copies);
  require_d(d);
  ProbabilityResult result;
  result.terms.reserve(static_cast<std::size_t>(n_copies));
  double weighted_sum = 0.0;
  for (int l1 = n_copies + 1; l1 <= 2 * n_copies; ++l1) {
    const auto diagram = TwoRowDiagram::from_lambda1(l1, n_copies);
    const std::uint64_t m = two_row_multiplicity(diagram, d);
    const int two_j = 2 * l1 - 2 * n_copies - 1;
    const double delta = delta_qubit(two_j, n_copies);
    weighted_sum += static_cast<double>(m) * delta;
    result.terms.push_back({diagram.lambda1, diagram.lambda2, m, delta});
  }
  const double denom = 2.0 * static_cast<double>(sym_dim(n_copies + 1, d)) *
                       static_cast<double>(sym_dim(n_copies, d));
  result.value = 0.5 + weighted_sum / denom;
  return result;
}

double p_ident_qubit(int n_copies) {
  require_n_copies(n_copies);
  double weighted_sum = 0.0;
  for (int two_j = 1; two_j <= 2 * n_copies - 1; two_j += 2) {
    weighted_sum += (two_j + 1) * delta_qubit(two_j, n_copies);
  }
  const double denom =
      2.0 * (n_copies + 1.0) * (n_copies + 2.0);
  return 0.5 + weighted_sum / denom;
}

double p_ident_limit(int d) {
  return p_disc_mean(d);
}

}  // namespace qident
