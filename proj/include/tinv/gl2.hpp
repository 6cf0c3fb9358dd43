#pragma once

#include <cstdint>
#include <optional>

#include "tinv/algebra.hpp"

namespace tinv {

// H*(F_{p^r}; F_{p^r}) with the scalar action of F_{p^r}^x: generators
// x_0..x_{r-1} (exterior) and y_0..y_{r-1} (polynomial) of weight p^k, or
// polynomial x_k only when p = 2.
AlgebraSpec gl2_algebra(std::uint64_t p, std::uint64_t r);

// As gl2_algebra with the torus cut down to the squares: modulus (q-1)/2.
AlgebraSpec sl2_algebra(std::uint64_t p, std::uint64_t r);

struct Landmarks {
  std::uint32_t p = 0, r = 0;
  bool special_linear = false;
  unsigned searched_to = 0;

  std::optional<unsigned> first_positive_degree;
  std::uint64_t first_dim = 0;
  std::optional<Monomial> witness;  // set when first_dim == 1
  std::optional<unsigned> lowest_nonnilpotent_degree;
  std::optional<Monomial> nonnilpotent_witness;
  std::optional<bool> square_free_check;  // p = 2 only

  DimSeries invariant;
  DimSeries nilpotent;

  // Closed-form expectations the enumeration is compared against.
  unsigned expected_first_degree = 0;
  Monomial expected_witness;
  std::optional<unsigned> expected_nonnilpotent_degree;
  std::optional<Monomial> expected_nonnilpotent_witness;
  bool match = false;
};

Landmarks gl2_landmarks(std::uint64_t p, std::uint64_t r);
Landmarks sl2_landmarks(std::uint64_t p, std::uint64_t r);

}  // namespace tinv
