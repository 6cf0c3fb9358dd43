#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "random_spec.hpp"
#include "tinv/errors.hpp"
#include "tinv/gl2.hpp"
#include "tinv/grgln.hpp"

using namespace tinv;

namespace {

std::vector<std::string> text(const AlgebraSpec& alg, const std::vector<Monomial>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(monomial_to_string(alg, m));
  return out;
}

// Dense odometer over exponent vectors; independent of the library walker.
std::vector<std::vector<std::uint32_t>> brute_monomials(const AlgebraSpec& alg, unsigned degree) {
  const std::size_t n = alg.size();
  std::vector<std::uint32_t> cap(n);
  for (std::size_t i = 0; i < n; ++i) {
    cap[i] = alg.generator(i).parity == Parity::exterior ? 1 : degree / alg.generator(i).degree;
  }
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> e(n, 0);
  while (true) {
    unsigned d = 0;
    for (std::size_t i = 0; i < n; ++i) d += e[i] * alg.generator(i).degree;
    if (d == degree) out.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == cap[i]) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  return out;
}

}  // namespace

TEST_CASE("monomial weights") {
  const auto gl2 = gl2_algebra(3, 1);
  CHECK(monomial_weight(gl2, Monomial{}).coords == std::vector<std::int64_t>{0});
  CHECK(monomial_weight(gl2, make_monomial(gl2, {{"x0", 1}, {"y0", 1}})).coords == std::vector<std::int64_t>{0});
  const auto gr = build_gr_un(3, 3, 1);
  const auto m = make_monomial(gr.algebra, {{"x_1_2_0", 1}, {"x_1_3_0", 1}, {"x_2_3_0", 1}});
  CHECK(monomial_weight(gr.algebra, m).coords == std::vector<std::int64_t>{0, 0, 0});
  CHECK_THROWS_AS(make_monomial(gl2, {{"nope", 1}}), invalid_input);
  CHECK_THROWS_AS(make_monomial(gl2, {{"x0", 2}}), invalid_input);
}

TEST_CASE("enumeration examples") {
  const auto gl2 = gl2_algebra(3, 1);
  CHECK(enumerate_monomials(gl2, 0).size() == 1);
  CHECK(text(gl2, enumerate_monomials(gl2, 3)) == std::vector<std::string>{"x0*y0"});
  const auto gl2_4 = gl2_algebra(2, 2);
  CHECK(text(gl2_4, enumerate_monomials(gl2_4, 2)) == std::vector<std::string>{"x0^2", "x0*x1", "x1^2"});
}

TEST_CASE("invariant examples") {
  const auto gl2 = gl2_algebra(3, 1);
  const std::vector<std::vector<std::string>> expected = {{"1"}, {}, {}, {"x0*y0"}, {"y0^2"}, {}, {}, {"x0*y0^3"}, {"y0^4"}};
  for (unsigned d = 0; d <= 8; ++d) CHECK(text(gl2, invariant_monomials(gl2, d)) == expected[d]);
  CHECK(dimension_series(gl2, 8, SeriesFilter::invariant).dims == std::vector<std::uint64_t>{1, 0, 0, 1, 1, 0, 0, 1, 1});
  CHECK(dimension_series(gl2, 8, SeriesFilter::invariant_nilpotent).dims ==
        std::vector<std::uint64_t>{0, 0, 0, 1, 0, 0, 0, 1, 0});
  const auto gl2_4 = gl2_algebra(2, 2);
  CHECK(text(gl2_4, invariant_monomials(gl2_4, 2)) == std::vector<std::string>{"x0*x1"});
  const auto gr = build_gr_un(3, 3, 1);
  const auto inv = text(gr.algebra, invariant_monomials(gr.algebra, 3));
  CHECK(inv.size() == 4);
  for (const char* m : {"x_1_2_0*y_1_2_0", "x_1_3_0*y_1_3_0", "x_2_3_0*y_2_3_0", "x_1_2_0*x_1_3_0*x_2_3_0"}) {
    CHECK(std::find(inv.begin(), inv.end(), m) != inv.end());
  }
}

TEST_CASE("enumeration matches a brute-force odometer and the Hilbert series") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    const AlgebraSpec alg = testing::random_spec(rng);
    std::size_t exterior = 0;
    std::vector<unsigned> poly;
    for (const auto& g : alg.generators()) {
      if (g.parity == Parity::exterior) {
        ++exterior;
      } else {
        poly.push_back(g.degree);
      }
    }
    const auto hilbert = oracle::hilbert_series(exterior, poly, 8);
    CHECK(dimension_series(alg, 8, SeriesFilter::all).dims == hilbert);
    for (unsigned d = 0; d <= 6; ++d) {
      auto brute = brute_monomials(alg, d);
      std::vector<Monomial> ref;
      for (const auto& e : brute) ref.push_back(Monomial::from_dense(e));
      sort_canonical(ref);
      CHECK(enumerate_monomials(alg, d) == ref);
    }
  }
}

TEST_CASE("canonical order is descending lex on dense exponents") {
  const auto alg = gl2_algebra(2, 3);
  for (unsigned d = 1; d <= 5; ++d) {
    const auto ms = enumerate_monomials(alg, d);
    for (std::size_t i = 1; i < ms.size(); ++i) {
      CHECK(ms[i - 1].dense(alg.size()) > ms[i].dense(alg.size()));
      CHECK(canonical_less(ms[i - 1], ms[i]));
    }
  }
}

TEST_CASE("oracle equivalence on 100 seeded random specs") {
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 100; ++t) {
    const AlgebraSpec alg = testing::random_spec(rng);
    for (unsigned d = 0; d <= 8; ++d) {
      const auto fast = invariant_monomials(alg, d);
      CHECK(fast == invariant_monomials_oracle(alg, d));
      CHECK(fast == invariant_monomials(alg, d, {.prune = false}));
    }
  }
}

TEST_CASE("invariants are the zero-weight subset of all monomials") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    const AlgebraSpec alg = testing::random_spec(rng);
    for (unsigned d = 0; d <= 6; ++d) {
      std::vector<Monomial> filtered;
      for (const auto& m : enumerate_monomials(alg, d)) {
        const auto w = monomial_weight(alg, m);
        if (std::all_of(w.coords.begin(), w.coords.end(), [](auto c) { return c == 0; })) filtered.push_back(m);
      }
      CHECK(invariant_monomials(alg, d) == filtered);
    }
  }
}

TEST_CASE("rescaling weights by a unit preserves invariants") {
  const auto base = build_gr_un(3, 5, 1).algebra;  // modulus 4
  std::vector<GeneratorSpec> gens = base.generators();
  for (auto& g : gens) {
    for (auto& c : g.weight.coords) c *= 3;
  }
  const AlgebraSpec scaled(base.field(), base.torus_rank(), base.moduli(), gens);
  for (unsigned d = 0; d <= 9; ++d) CHECK(invariant_monomials(base, d) == invariant_monomials(scaled, d));
}

TEST_CASE("detection kernel") {
  const auto gr = build_gr_un(3, 3, 1);
  std::vector<std::vector<std::string>> hooks;
  for (auto [l, m] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {1, 3}, {2, 3}}) {
    hooks.push_back(subgroup_support(gr, SubgroupKind::hook(l, m)).generator_ids);
  }
  CHECK(detection_kernel(gr.algebra, 3, hooks).kernel_dim == 0);
  const auto empty = detection_kernel(gr.algebra, 3, {});
  CHECK(empty.kernel_dim == 4);
  CHECK(empty.cokernel_dim == 4);
  std::vector<std::string> all_ids;
  for (const auto& g : gr.algebra.generators()) all_ids.push_back(g.id);
  for (unsigned d = 1; d <= 6; ++d) CHECK(detection_kernel(gr.algebra, d, {all_ids}).kernel_dim == 0);
  CHECK_THROWS_AS(detection_kernel(gr.algebra, 3, {{"missing"}}), invalid_input);
}

TEST_CASE("nilpotent series bounds") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const AlgebraSpec alg = testing::random_spec(rng);
    const auto inv = dimension_series(alg, 8, SeriesFilter::invariant).dims;
    const auto nil = dimension_series(alg, 8, SeriesFilter::invariant_nilpotent).dims;
    for (unsigned d = 0; d <= 8; ++d) CHECK(nil[d] <= inv[d]);
    if (alg.char2_mode()) {
      for (unsigned d = 1; d <= 8; ++d) CHECK(nil[d] == 0);
    }
  }
}

TEST_CASE("Quillen divisibility") {
  const auto q31 = quillen_verify(3, 1);
  CHECK(q31.pass);
  CHECK(q31.equality_tuples == std::vector<std::vector<std::uint32_t>>{{2}});
  const auto q22 = quillen_verify(2, 2);
  CHECK(q22.pass);
  CHECK(q22.equality_tuples == std::vector<std::vector<std::uint32_t>>{{1, 1}});
  CHECK(quillen_verify(5, 2).pass);
  CHECK_THROWS_AS(quillen_verify(6, 1), invalid_input);
}

TEST_CASE("spec validation and caps") {
  const auto f = ffq::PrimePower::make(5, 1);
  CHECK_THROWS_AS(AlgebraSpec(f, 1, {3}, {}), invalid_input);
  CHECK_THROWS_AS(AlgebraSpec(f, 1, {}, {{"a", Parity::exterior, 2, {{1}}, ""}}), invalid_input);
  CHECK_THROWS_AS(AlgebraSpec(f, 1, {}, {{"a", Parity::polynomial, 2, {{1}}, ""}, {"a", Parity::polynomial, 2, {{1}}, ""}}),
                  invalid_input);
  const auto f2 = ffq::PrimePower::make(2, 2);
  CHECK_THROWS_AS(AlgebraSpec(f2, 1, {}, {{"a", Parity::exterior, 1, {{1}}, ""}}), invalid_input);
  const AlgebraSpec ok(f, 1, {}, {{"a", Parity::polynomial, 2, {{7}}, ""}});
  CHECK(ok.moduli() == std::vector<std::int64_t>{4});
  CHECK(ok.generator(0).weight.coords == std::vector<std::int64_t>{3});
  const auto big = build_gr_un(5, 2, 1).algebra;  // 10 degree-1 generators
  CHECK_THROWS_AS(enumerate_monomials(big, 12, {.prune = true, .cap = 1000}), resource_limit);
}
