#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tinv/errors.hpp"
#include "tinv/ffq.hpp"

using namespace tinv;
using namespace tinv::ffq;

namespace {

std::shared_ptr<const Field> field(std::uint64_t p, std::uint64_t r) {
  return std::make_shared<const Field>(PrimePower::make(p, r));
}

FqMatrix jordan_plus_identity(const std::shared_ptr<const Field>& f, std::size_t n) {
  auto m = FqMatrix::identity(f, n);
  for (std::size_t k = 0; k + 1 < n; ++k) m.set(k, k + 1, f->one());
  return m;
}

}  // namespace

TEST_CASE("prime powers are validated") {
  CHECK(is_prime(2));
  CHECK(is_prime(1'048'573));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(PrimePower::make(3, 4).q == 81);
  CHECK_THROWS_AS(PrimePower::make(4, 1), invalid_input);
  CHECK_THROWS_AS(PrimePower::make(3, 0), invalid_input);
  CHECK_THROWS_AS(PrimePower::make(2, 21), invalid_input);
  CHECK(PrimePower::make(2, 20).q == (1u << 20));
}

TEST_CASE("smallest irreducible polynomials") {
  CHECK(find_irreducible(2, 1) == Poly{0, 1});
  CHECK(find_irreducible(2, 2) == Poly{1, 1, 1});
  CHECK(find_irreducible(3, 2) == Poly{1, 0, 1});
}

TEST_CASE("irreducible choice agrees with trial division") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t r = 1; r <= 4; ++r) {
      const Poly f = find_irreducible(p, r);
      REQUIRE(f.size() == r + 1);
      CHECK(f.back() == 1);
      CHECK(oracle::irreducible_by_trial_division(f, p));
      // Every lexicographically smaller monic candidate is reducible.
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < r; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly g(r + 1, 0);
        g[r] = 1;
        // Rank code with c_0 most significant.
        std::uint64_t c = code;
        for (std::uint32_t i = r; i-- > 0; c /= p) g[i] = static_cast<std::uint32_t>(c % p);
        if (g == f) break;
        CHECK_FALSE(oracle::irreducible_by_trial_division(g, p));
      }
    }
  }
}

TEST_CASE("Rabin test agrees with trial division") {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::uint32_t r = 1; r <= 5; ++r) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < r; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly g(r + 1, 0);
        g[r] = 1;
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < r; ++i, c /= p) g[i] = static_cast<std::uint32_t>(c % p);
        CHECK(is_irreducible(g, p) == oracle::irreducible_by_trial_division(g, p));
      }
    }
  }
}

TEST_CASE("multiplicative generators") {
  CHECK(field(3, 1)->multiplicative_generator().coeffs == std::vector<std::uint32_t>{2});
  CHECK(field(5, 1)->multiplicative_generator().coeffs == std::vector<std::uint32_t>{2});
  CHECK(field(2, 2)->multiplicative_generator().coeffs == std::vector<std::uint32_t>{0, 1});
  for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 2}, {7, 1}, {2, 6}}) {
    const auto f = field(p, r);
    const auto& g = f->multiplicative_generator();
    CHECK(f->is_one(f->pow(g, f->q() - 1)));
    auto x = f->one();
    for (std::uint32_t k = 1; k < f->q() - 1; ++k) {
      x = f->mul(x, g);
      CHECK_FALSE(f->is_one(x));
    }
    // Lexicographically smallest: no smaller rank has full order.
    for (std::uint64_t rank = 1; rank < f->lex_rank(g); ++rank) {
      CHECK(f->multiplicative_order(f->from_lex_rank(rank)) < f->q() - 1);
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 1}, {2, 4}, {3, 3}, {5, 2}, {7, 2}, {2, 6}}) {
    const auto f = field(p, r);
    for (int t = 0; t < 200; ++t) {
      const auto a = f->from_lex_rank(rng() % f->q());
      const auto b = f->from_lex_rank(rng() % f->q());
      const auto c = f->from_lex_rank(rng() % f->q());
      CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
      CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
      CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      CHECK(f->mul(a, b) == f->mul(b, a));
      CHECK(f->is_zero(f->add(a, f->neg(a))));
      CHECK(f->sub(a, b) == f->add(a, f->neg(b)));
      if (!f->is_zero(a)) CHECK(f->is_one(f->mul(a, f->inv(a))));
    }
  }
}

TEST_CASE("lex rank round trip") {
  const auto f = field(3, 3);
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint64_t rank = 0; rank < f->q(); ++rank) {
    const auto e = f->from_lex_rank(rank);
    CHECK(f->lex_rank(e) == rank);
    seen.insert(e.coeffs);
  }
  CHECK(seen.size() == 27);
  CHECK(f->from_lex_rank(1).coeffs == std::vector<std::uint32_t>{0, 0, 1});
}

TEST_CASE("matrix powers") {
  const auto f3 = field(3, 1);
  CHECK(mat_pow(FqMatrix::identity(f3, 4), 5).is_identity());
  CHECK(mat_pow(jordan_plus_identity(f3, 3), 3).is_identity());
  CHECK(mat_pow(jordan_plus_identity(f3, 3), 0).is_identity());
  const auto f2 = field(2, 1);
  const auto g = jordan_plus_identity(f2, 3);
  const auto sq = mat_pow(g, 2);
  CHECK_FALSE(sq.is_identity());
  CHECK(f2->is_one(sq.at(0, 2)));
  CHECK(f2->is_zero(sq.at(0, 1)));
  CHECK(matrix_order(g, 16) == std::optional<std::uint64_t>(4));
}

TEST_CASE("unitriangular enumeration") {
  auto count_all = [](std::uint64_t p, std::uint64_t r, std::size_t n) {
    UnitriangularElements s(field(p, r), n, EnumerationMode::all());
    std::set<std::vector<std::uint64_t>> distinct;
    std::uint64_t count = 0;
    while (auto g = s.next()) {
      ++count;
      CHECK(g->is_upper_unitriangular());
      std::vector<std::uint64_t> key;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) key.push_back(g->field().lex_rank(g->at(i, j)));
      }
      distinct.insert(key);
    }
    CHECK(distinct.size() == count);
    return count;
  };
  CHECK(count_all(2, 1, 2) == 2);
  CHECK(count_all(3, 1, 3) == 27);
  CHECK(count_all(2, 2, 3) == 64);
  CHECK(unitriangular_order(5, 4) == 15'625);
  CHECK_THROWS_AS(UnitriangularElements(field(3, 1), 6, EnumerationMode::all()), resource_limit);
}

TEST_CASE("sampling is reproducible") {
  auto draw = [](std::uint64_t seed) {
    UnitriangularElements s(field(5, 1), 4, EnumerationMode::sample(100, seed));
    std::vector<std::vector<std::uint64_t>> out;
    while (auto g = s.next()) {
      CHECK(g->is_upper_unitriangular());
      std::vector<std::uint64_t> key;
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) key.push_back(g->field().lex_rank(g->at(i, j)));
      }
      out.push_back(key);
    }
    return out;
  };
  const auto a = draw(7);
  CHECK(a.size() == 100);
  CHECK(a == draw(7));
  CHECK(a != draw(8));
}
