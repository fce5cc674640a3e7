#include "qident/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qident {

namespace {

// Stride of subsystem k under the subsystem-0-most-significant convention.
std::vector<std::size_t> layout_strides(int n, int d, std::size_t dim) {
  std::vector<std::size_t> strides(static_cast<std::size_t>(n));
  std::size_t s = dim;
  for (int k = 0; k < n; ++k) {
    s /= static_cast<std::size_t>(d);
    strides[static_cast<std::size_t>(k)] = s;
  }
  return strides;
}

void decode_index(std::size_t index, int d,
                  const std::vector<std::size_t>& strides,
                  std::vector<int>& digits) {
  for (std::size_t k = 0; k < strides.size(); ++k) {
    digits[k] = static_cast<int>((index / strides[k]) % static_cast<std::size_t>(d));
  }
}

void validate_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) {
    throw ArgumentError("permutation length " + std::to_string(perm.size()) +
                        " does not match subsystem count " + std::to_string(n));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw ArgumentError("permutation is not a bijection on {0..n-1}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

// Composite-index image of the permutation sending slot k's content to
// slot perm[k]; map[c] is the row index of column c's single 1-entry.
std::vector<std::size_t> permutation_index_map(const TensorLayout& layout,
                                               const std::vector<int>& perm) {
  const std::size_t dim = layout.total_dim();
  const auto strides = layout_strides(layout.n, layout.d, dim);
  std::vector<std::size_t> map(dim);
  std::vector<int> digits(static_cast<std::size_t>(layout.n));
  for (std::size_t c = 0; c < dim; ++c) {
    decode_index(c, layout.d, strides, digits);
    std::size_t r = 0;
    for (int k = 0; k < layout.n; ++k) {
      r += static_cast<std::size_t>(digits[static_cast<std::size_t>(k)]) *
           strides[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    }
    map[c] = r;
  }
  return map;
}

int permutation_parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t a = 0; a < perm.size(); ++a) {
    for (std::size_t b = a + 1; b < perm.size(); ++b) {
      if (perm[a] > perm[b]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::uint64_t factorial_u64(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Accumulates coeff * P_pi into `out` for every permutation pi of `subset`
// (identity elsewhere); coeff may depend on the parity of pi.
void accumulate_subset_permutations(Eigen::MatrixXcd& out,
                                    const TensorLayout& layout,
                                    const std::vector<int>& subset,
                                    bool signed_sum) {
  std::vector<int> sorted_subset = subset;
  std::sort(sorted_subset.begin(), sorted_subset.end());
  const double weight =
      1.0 / static_cast<double>(factorial_u64(static_cast<int>(subset.size())));

  std::vector<int> image = sorted_subset;
  std::vector<int> full_perm(static_cast<std::size_t>(layout.n));
  do {
    std::iota(full_perm.begin(), full_perm.end(), 0);
    for (std::size_t t = 0; t < sorted_subset.size(); ++t) {
      full_perm[static_cast<std::size_t>(sorted_subset[t])] = image[t];
    }
    double coeff = weight;
    if (signed_sum) coeff *= permutation_parity(full_perm);
    const auto map = permutation_index_map(layout, full_perm);
    for (std::size_t c = 0; c < map.size(); ++c) {
      out(static_cast<Eigen::Index>(map[c]), static_cast<Eigen::Index>(c)) +=
          coeff;
    }
  } while (std::next_permutation(image.begin(), image.end()));
}

void validate_subset(const std::vector<int>& subset, int n) {
  if (subset.empty()) {
    throw ArgumentError("subsystem subset must not be empty");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : subset) {
    if (v < 0 || v >= n) {
      throw ArgumentError("subsystem index " + std::to_string(v) +
                          " outside [0, " + std::to_string(n) + ")");
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw ArgumentError("subsystem subset contains duplicates");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::vector<int> range_vec(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

void validate_copy_counts(int m_copies, int n_copies, int d) {
  if (m_copies < 1) {
    throw ArgumentError("input copy count must be at least 1, got M=" +
                        std::to_string(m_copies));
  }
  if (n_copies < 1) {
    throw ArgumentError("reference copy count must be at least 1, got N=" +
                        std::to_string(n_copies));
  }
  if (d < 2) {
    throw ArgumentError("local dimension must be at least 2, got d=" +
                        std::to_string(d));
  }
}

}  // namespace

DenseOperator permutation_operator(const TensorLayout& layout,
                                   const std::vector<int>& perm,
                                   std::size_t dim_cap) {
  layout.check_cap(dim_cap);
  validate_permutation(perm, layout.n);
  const std::size_t dim = layout.total_dim();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  const auto map = permutation_index_map(layout, perm);
  for (std::size_t c = 0; c < dim; ++c) {
    p(static_cast<Eigen::Index>(map[c]), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return DenseOperator{std::vector<int>(static_cast<std::size_t>(layout.n), layout.d),
                       std::move(p), false};
}

DenseOperator symmetrizer(const TensorLayout& layout,
                          const std::vector<int>& subset,
                          std::size_t dim_cap) {
  layout.check_cap(dim_cap);
  validate_subset(subset, layout.n);
  const std::size_t dim = layout.total_dim();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  accumulate_subset_permutations(s, layout, subset, /*signed_sum=*/false);
  return DenseOperator{std::vector<int>(static_cast<std::size_t>(layout.n), layout.d),
                       std::move(s), true};
}

DenseOperator antisymmetrizer(const TensorLayout& layout, std::size_t dim_cap) {
  layout.check_cap(dim_cap);
  const std::size_t dim = layout.total_dim();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  accumulate_subset_permutations(a, layout, range_vec(0, layout.n),
                                 /*signed_sum=*/true);
  return DenseOperator{std::vector<int>(static_cast<std::size_t>(layout.n), layout.d),
                       std::move(a), true};
}

DenseOperator build_mcopy_operator(int m_copies, int n_copies, int d,
                                   std::size_t dim_cap) {
  validate_copy_counts(m_copies, n_copies, d);
  const TensorLayout layout{m_copies + 2 * n_copies, d};
  layout.check_cap(dim_cap);

  const auto input_slots = range_vec(0, m_copies);
  const auto ref1_slots = range_vec(m_copies, n_copies);
  const auto ref2_slots = range_vec(m_copies + n_copies, n_copies);

  auto joined = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  const auto s_01 = symmetrizer(layout, joined(input_slots, ref1_slots), dim_cap);
  const auto s_02 = symmetrizer(layout, joined(input_slots, ref2_slots), dim_cap);
  const auto s_1 = symmetrizer(layout, ref1_slots, dim_cap);
  const auto s_2 = symmetrizer(layout, ref2_slots, dim_cap);

  Eigen::MatrixXcd entries =
      s_01.entries * s_2.entries - s_1.entries * s_02.entries;
  return DenseOperator{s_01.factor_dims, std::move(entries), true};
}

DenseOperator build_identification_operator(int n_copies, int d,
                                            std::size_t dim_cap) {
  return build_mcopy_operator(1, n_copies, d, dim_cap);
}

SymBasis::SymBasis(int n_copies, int d) : n_copies_(n_copies), d_(d) {
  if (n_copies < 0) {
    throw ArgumentError("copy count must be nonnegative, got N=" +
                        std::to_string(n_copies));
  }
  if (d < 2) {
    throw ArgumentError("local dimension must be at least 2, got d=" +
                        std::to_string(d));
  }
  // Enumerate occupation vectors in lexicographically descending order.
  std::vector<int> occ(static_cast<std::size_t>(d), 0);
  auto recurse = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == d - 1) {
      occ[static_cast<std::size_t>(slot)] = remaining;
      occupations_.push_back(occ);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      occ[static_cast<std::size_t>(slot)] = v;
      self(self, slot + 1, remaining - v);
    }
  };
  recurse(recurse, 0, n_copies);
  for (std::size_t j = 0; j < occupations_.size(); ++j) {
    index_.emplace(occupations_[j], static_cast<int>(j));
  }
}

int SymBasis::index_of(const std::vector<int>& occupation) const {
  const auto it = index_.find(occupation);
  if (it == index_.end()) {
    throw ArgumentError("occupation vector does not belong to this basis");
  }
  return it->second;
}

Eigen::MatrixXcd SymBasis::isometry(std::size_t dim_cap) const {
  if (n_copies_ < 1) {
    throw ArgumentError("isometry needs at least one copy");
  }
  const TensorLayout layout{n_copies_, d_};
  layout.check_cap(dim_cap);
  const std::size_t full_dim = layout.total_dim();
  const auto strides = layout_strides(layout.n, layout.d, full_dim);

  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(full_dim),
                                              dim());
  std::vector<int> digits(static_cast<std::size_t>(n_copies_));
  std::vector<int> occ(static_cast<std::size_t>(d_));
  for (std::size_t c = 0; c < full_dim; ++c) {
    decode_index(c, d_, strides, digits);
    std::fill(occ.begin(), occ.end(), 0);
    for (int digit : digits) ++occ[static_cast<std::size_t>(digit)];
    // 1/sqrt(#arrangements) on every product state sharing the occupation
    std::uint64_t arrangements = factorial_u64(n_copies_);
    for (int k : occ) arrangements /= factorial_u64(k);
    v(static_cast<Eigen::Index>(c), index_of(occ)) =
        1.0 / std::sqrt(static_cast<double>(arrangements));
  }
  return v;
}

Eigen::VectorXcd sym_embed_power(const PureState& psi, const SymBasis& basis) {
  if (psi.d != basis.local_dim()) {
    throw ArgumentError("state dimension " + std::to_string(psi.d) +
                        " does not match basis dimension " +
                        std::to_string(basis.local_dim()));
  }
  const int n = basis.n_copies();
  Eigen::VectorXcd out(basis.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    const auto& occ = basis.occupations()[static_cast<std::size_t>(j)];
    std::uint64_t arrangements = factorial_u64(n);
    Complex amp = 1.0;
    for (int k = 0; k < psi.d; ++k) {
      const int cnt = occ[static_cast<std::size_t>(k)];
      arrangements /= factorial_u64(cnt);
      for (int t = 0; t < cnt; ++t) amp *= psi.amplitudes(k);
    }
    out(j) = std::sqrt(static_cast<double>(arrangements)) * amp;
  }
  return out;
}

DenseOperator build_identification_operator_sym(int n_copies, int d,
                                                std::size_t dim_cap) {
  validate_copy_counts(1, n_copies, d);
  const SymBasis basis(n_copies, d);
  const std::size_t d_n = static_cast<std::size_t>(basis.dim());
  const std::size_t dim = static_cast<std::size_t>(d) * d_n * d_n;
  if (dim > dim_cap) {
    throw SizeError("restricted dimension " + std::to_string(dim) +
                    " (d*d_N^2 for N=" + std::to_string(n_copies) + ", d=" +
                    std::to_string(d) + ") exceeds the cap of " +
                    std::to_string(dim_cap));
  }

  // Matrix elements of the (N+1)-qudit symmetrizer between
  // |i> (x) |occupation n> states:
  //   <i',m'| S_{N+1} |i,n> = sqrt((n_i+1)(m'_{i'}+1)) / (N+1)
  // whenever n + e_i = m' + e_{i'}, and 0 otherwise.
  struct Element {
    int bra_i, bra_occ, ket_i, ket_occ;
    double value;
  };
  std::vector<Element> elements;
  for (int i = 0; i < d; ++i) {
    for (int a = 0; a < basis.dim(); ++a) {
      std::vector<int> lifted = basis.occupations()[static_cast<std::size_t>(a)];
      const int n_i = lifted[static_cast<std::size_t>(i)];
      ++lifted[static_cast<std::size_t>(i)];
      for (int ip = 0; ip < d; ++ip) {
        if (lifted[static_cast<std::size_t>(ip)] == 0) continue;
        std::vector<int> bra_occ = lifted;
        --bra_occ[static_cast<std::size_t>(ip)];
        const double value =
            std::sqrt(static_cast<double>(n_i + 1) *
                      static_cast<double>(lifted[static_cast<std::size_t>(ip)])) /
            static_cast<double>(n_copies + 1);
        elements.push_back({ip, basis.index_of(bra_occ), i, a, value});
      }
    }
  }

  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto compose = [d_n](int i, std::size_t a, std::size_t b) {
    return static_cast<Eigen::Index>(
        (static_cast<std::size_t>(i) * d_n + a) * d_n + b);
  };
  for (const Element& e : elements) {
    // S_{N+1}(01) acts on (input, reference-1), identity on reference-2...
    for (std::size_t b = 0; b < d_n; ++b) {
      entries(compose(e.bra_i, static_cast<std::size_t>(e.bra_occ), b),
              compose(e.ket_i, static_cast<std::size_t>(e.ket_occ), b)) += e.value;
    }
    // ...and S_{N+1}(02) on (input, reference-2), identity on reference-1.
    for (std::size_t a = 0; a < d_n; ++a) {
      entries(compose(e.bra_i, a, static_cast<std::size_t>(e.bra_occ)),
              compose(e.ket_i, a, static_cast<std::size_t>(e.ket_occ))) -= e.value;
    }
  }

  return DenseOperator{{d, basis.dim(), basis.dim()}, std::move(entries), true};
}

EmbeddedState embed_product_state(const std::vector<PureState>& states,
                                  std::size_t dim_cap) {
  if (states.empty()) {
    throw ArgumentError("product embedding needs at least one state");
  }
  const int d = states.front().d;
  for (const auto& s : states) {
    if (s.d != d) {
      throw ArgumentError("product states must share one dimension; got " +
                          std::to_string(s.d) + " and " + std::to_string(d));
    }
  }
  const TensorLayout layout{static_cast<int>(states.size()), d};
  layout.check_cap(dim_cap);

  Eigen::VectorXcd amplitudes = states.front().amplitudes;
  for (std::size_t k = 1; k < states.size(); ++k) {
    Eigen::VectorXcd next(amplitudes.size() * d);
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
      next.segment(i * d, d) = amplitudes(i) * states[k].amplitudes;
    }
    amplitudes.swap(next);
  }
  return EmbeddedState{layout, std::move(amplitudes)};
}

}  // namespace qident
