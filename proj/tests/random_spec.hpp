#pragma once

#include <random>
#include <string>
#include <vector>

#include "tinv/algebra.hpp"

namespace testing {

// Random spec with q <= 16, up to 6 generators and a random divisor modulus.
inline tinv::AlgebraSpec random_spec(std::mt19937_64& rng) {
  static const std::vector<std::pair<int, int>> fields = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2},
                                                          {5, 1}, {7, 1}, {11, 1}, {13, 1}};
  const auto [p, r] = fields[rng() % fields.size()];
  const auto f = tinv::ffq::PrimePower::make(p, r);
  const std::int64_t order = f.q - 1;
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d <= order; ++d) {
    if (order % d == 0) divisors.push_back(d);
  }
  const std::size_t rank = 1 + rng() % 3;
  std::vector<std::int64_t> moduli(rank);
  for (auto& m : moduli) m = divisors[rng() % divisors.size()];
  const std::size_t count = 1 + rng() % 6;
  std::vector<tinv::GeneratorSpec> gens;
  for (std::size_t i = 0; i < count; ++i) {
    tinv::GeneratorSpec g;
    g.id = "g" + std::to_string(i);
    g.parity = (p == 2 || rng() % 2) ? tinv::Parity::polynomial : tinv::Parity::exterior;
    g.degree = g.parity == tinv::Parity::exterior || p == 2 ? 1 : 2;
    for (std::size_t c = 0; c < rank; ++c) {
      g.weight.coords.push_back(static_cast<std::int64_t>(rng() % (2 * f.q + 1)) - static_cast<std::int64_t>(f.q));
    }
    gens.push_back(std::move(g));
  }
  return tinv::AlgebraSpec(f, rank, moduli, gens);
}

}  // namespace testing
