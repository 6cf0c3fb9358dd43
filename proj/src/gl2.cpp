#include "tinv/gl2.hpp"

#include <string>

#include "tinv/errors.hpp"

namespace tinv {

namespace {

AlgebraSpec rank_one_algebra(const ffq::PrimePower& f, std::int64_t modulus) {
  std::vector<GeneratorSpec> gens;
  std::int64_t twist = 1;
  std::vector<std::int64_t> weights;
  for (std::uint32_t k = 0; k < f.r; ++k) {
    weights.push_back(twist);
    twist *= f.p;
  }
  const std::string k_tag = "(k=";
  if (f.p == 2) {
    for (std::uint32_t k = 0; k < f.r; ++k) {
      gens.push_back({"x" + std::to_string(k), Parity::polynomial, 1, {{weights[k]}},
                      k_tag + std::to_string(k) + ")"});
    }
  } else {
    for (std::uint32_t k = 0; k < f.r; ++k) {
      gens.push_back({"x" + std::to_string(k), Parity::exterior, 1, {{weights[k]}},
                      k_tag + std::to_string(k) + ")"});
    }
    for (std::uint32_t k = 0; k < f.r; ++k) {
      gens.push_back({"y" + std::to_string(k), Parity::polynomial, 2, {{weights[k]}},
                      k_tag + std::to_string(k) + "), y=beta(x)"});
    }
  }
  return AlgebraSpec(f, 1, {modulus}, std::move(gens));
}

// x_0...x_{r-1} y_0^b...y_{r-1}^b, or the x-product alone for p = 2.
Monomial product_monomial(const AlgebraSpec& alg, std::uint32_t x_exp, std::uint32_t y_exp) {
  std::vector<std::pair<std::string, std::uint32_t>> exps;
  const std::uint32_t r = alg.field().r;
  for (std::uint32_t k = 0; k < r; ++k) {
    if (x_exp) exps.emplace_back("x" + std::to_string(k), x_exp);
  }
  if (alg.field().p != 2 && y_exp) {
    for (std::uint32_t k = 0; k < r; ++k) exps.emplace_back("y" + std::to_string(k), y_exp);
  }
  return make_monomial(alg, exps);
}

Landmarks compute_landmarks(const AlgebraSpec& alg, bool special_linear) {
  const auto& f = alg.field();
  Landmarks lm;
  lm.p = f.p;
  lm.r = f.r;
  lm.special_linear = special_linear;
  lm.searched_to = f.r * (2 * f.p - 2) + 1;
  lm.invariant = dimension_series(alg, lm.searched_to, SeriesFilter::invariant);
  lm.nilpotent = dimension_series(alg, lm.searched_to, SeriesFilter::invariant_nilpotent);

  for (unsigned d = 1; d <= lm.searched_to; ++d) {
    if (lm.invariant.dims[d] == 0) continue;
    lm.first_positive_degree = d;
    lm.first_dim = lm.invariant.dims[d];
    if (lm.first_dim == 1) lm.witness = invariant_monomials(alg, d).front();
    break;
  }
  for (unsigned d = 1; d <= lm.searched_to; ++d) {
    // A monomial is nilpotent exactly when it carries an exterior factor.
    if (lm.invariant.dims[d] == lm.nilpotent.dims[d]) continue;
    lm.lowest_nonnilpotent_degree = d;
    for (auto& m : invariant_monomials(alg, d)) {
      bool has_ext = false;
      for (auto [i, e] : m.exps) has_ext |= alg.generator(i).parity == Parity::exterior;
      if (!has_ext) {
        lm.nonnilpotent_witness = std::move(m);
        break;
      }
    }
    break;
  }

  if (f.p == 2) {
    bool ok = true;
    for (const auto& m : invariant_monomials(alg, f.r)) {
      bool all_even = true;
      for (auto [i, e] : m.exps) all_even &= e % 2 == 0;
      ok &= !all_even;
    }
    lm.square_free_check = ok;
  }

  if (special_linear) {
    lm.expected_first_degree = f.r * (f.p - 2);
    lm.expected_witness = product_monomial(alg, 1, (f.p - 3) / 2);
  } else {
    lm.expected_first_degree = f.r * (2 * f.p - 3);
    lm.expected_witness = product_monomial(alg, 1, f.p - 2);
    if (f.p == 2) {
      // Characteristic 2 has no nilpotents, so the lowest class is already
      // non-nilpotent.
      lm.expected_nonnilpotent_degree = f.r;
      lm.expected_nonnilpotent_witness = product_monomial(alg, 1, 0);
    } else {
      lm.expected_nonnilpotent_degree = f.r * (2 * f.p - 2);
      lm.expected_nonnilpotent_witness = product_monomial(alg, 0, f.p - 1);
    }
  }

  lm.match = lm.first_positive_degree == lm.expected_first_degree && lm.first_dim == 1 &&
             lm.witness == lm.expected_witness;
  if (lm.expected_nonnilpotent_degree) {
    lm.match = lm.match && lm.lowest_nonnilpotent_degree == lm.expected_nonnilpotent_degree &&
               lm.nonnilpotent_witness == lm.expected_nonnilpotent_witness;
  }
  if (lm.square_free_check) lm.match = lm.match && *lm.square_free_check;
  return lm;
}

}  // namespace

AlgebraSpec gl2_algebra(std::uint64_t p, std::uint64_t r) {
  const auto f = ffq::PrimePower::make(p, r);
  return rank_one_algebra(f, std::int64_t{f.q} - 1);
}

AlgebraSpec sl2_algebra(std::uint64_t p, std::uint64_t r) {
  const auto f = ffq::PrimePower::make(p, r);
  if (f.p == 2) throw invalid_input("the SL_2 model requires odd p");
  return rank_one_algebra(f, (std::int64_t{f.q} - 1) / 2);
}

Landmarks gl2_landmarks(std::uint64_t p, std::uint64_t r) {
  return compute_landmarks(gl2_algebra(p, r), false);
}

Landmarks sl2_landmarks(std::uint64_t p, std::uint64_t r) {
  return compute_landmarks(sl2_algebra(p, r), true);
}

}  // namespace tinv
