#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tinv/errors.hpp"
#include "tinv/rootsys.hpp"
#include "tinv/smith.hpp"

using namespace tinv;

TEST_CASE("known Smith forms") {
  CHECK(invariant_factors({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) == std::vector<std::int64_t>{2, 6, 12});
  CHECK(invariant_factors({{0, 0}, {0, 0}}) == std::vector<std::int64_t>{0, 0});
  CHECK(invariant_factors({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
  CHECK(invariant_factors(cartan_matrix({'A', 3})) == std::vector<std::int64_t>{1, 1, 4});
  CHECK(determinant({{2, -1}, {-1, 2}}) == 3);
  CHECK(determinant({{1}}) == 1);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("Smith form agrees with determinantal divisors") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix m(rows, std::vector<std::int64_t>(cols));
    for (auto& row : m) {
      for (auto& v : row) v = static_cast<std::int64_t>(rng() % 13) - 6;
    }
    auto expected = oracle::invariant_factors_by_minors(m);
    CHECK(invariant_factors(m) == expected);
    if (rows == cols) CHECK(determinant(m) == oracle::det(m));
  }
}

TEST_CASE("Cartan determinants") {
  for (auto c : std::vector<Component>{{'A', 4}, {'B', 3}, {'C', 4}, {'D', 5}, {'E', 6}, {'E', 7}, {'E', 8}, {'F', 4}, {'G', 2}}) {
    CHECK(determinant(cartan_matrix(c)) == oracle::det(cartan_matrix(c)));
  }
  CHECK(determinant(cartan_matrix({'E', 8})) == 1);
  CHECK(determinant(cartan_matrix({'D', 4})) == 4);
}

TEST_CASE("overflow is reported") {
  const std::int64_t big = std::int64_t{1} << 62;
  CHECK_THROWS(invariant_factors({{big, big - 1}, {big - 3, big}}));
}
