#pragma once

#include <string>

#include "qident/types.hpp"

namespace qident {

// Binary operator dump, little-endian:
//   magic "QIDOP1" (6 bytes), n: u32, d: u32,
//   then d^n * d^n entries as (real, imag) IEEE-754 doubles, row-major.
// Only operators on uniform qudit registers are representable.

void dump_operator(const DenseOperator& op, const std::string& path);

DenseOperator load_operator(const std::string& path,
                            std::size_t dim_cap = kDefaultDimCap);

}  // namespace qident
