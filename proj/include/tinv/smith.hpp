#pragma once

#include <cstdint>
#include <vector>

namespace tinv {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Diagonal of the Smith normal form (nonnegative, each dividing the next,
// zeros last). Throws on int64 overflow.
std::vector<std::int64_t> invariant_factors(IntMatrix m);

std::int64_t determinant(const IntMatrix& m);

}  // namespace tinv
