#include "qident/operator_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "qident/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "operator dumps are little-endian; big-endian hosts need byte swaps");

namespace qident {

namespace {

constexpr std::array<char, 6> kMagic = {'Q', 'I', 'D', 'O', 'P', '1'};

}  // namespace

void dump_operator(const DenseOperator& op, const std::string& path) {
  const TensorLayout layout = op.layout();  // rejects mixed-factor operators
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out.write(kMagic.data(), kMagic.size());
  const std::uint32_t n = static_cast<std::uint32_t>(layout.n);
  const std::uint32_t d = static_cast<std::uint32_t>(layout.d);
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&d), sizeof(d));
  const Eigen::Index dim = op.dim();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double re = op.entries(r, c).real();
      const double im = op.entries(r, c).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof(re));
      out.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
  }
  if (!out) {
    throw IoError("write to '" + path + "' failed");
  }
}

DenseOperator load_operator(const std::string& path, std::size_t dim_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::array<char, 6> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) {
    throw IoError("'" + path + "' is not an operator dump (bad magic)");
  }
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&d), sizeof(d));
  if (!in) {
    throw IoError("'" + path + "' is truncated");
  }
  const TensorLayout layout{static_cast<int>(n), static_cast<int>(d)};
  layout.check_cap(dim_cap);
  const auto dim = static_cast<Eigen::Index>(layout.total_dim());
  Eigen::MatrixXcd entries(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      double re = 0.0;
      double im = 0.0;
      in.read(reinterpret_cast<char*>(&re), sizeof(re));
      in.read(reinterpret_cast<char*>(&im), sizeof(im));
      entries(r, c) = Complex(re, im);
    }
  }
  if (!in) {
    throw IoError("'" + path + "' is truncated");
  }
  return DenseOperator{std::vector<int>(n, static_cast<int>(d)),
                       std::move(entries), false};
}

}  // namespace qident
