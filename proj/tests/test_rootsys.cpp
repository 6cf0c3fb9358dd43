#include <doctest.h>

#include <algorithm>
#include <set>

#include "tinv/errors.hpp"
#include "tinv/rootsys.hpp"

using namespace tinv;

namespace {

RootSystem rs(const char* text) { return RootSystem(parse_components(text)); }

std::size_t closed_form_count(Component c) {
  const std::size_t n = c.rank;
  switch (c.type) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    default: return 6;
  }
}

unsigned classical_coxeter(Component c) {
  const unsigned n = c.rank;
  switch (c.type) {
    case 'A': return n + 1;
    case 'B':
    case 'C': return 2 * n;
    case 'D': return 2 * n - 2;
    case 'E': return n == 6 ? 12 : n == 7 ? 18 : 30;
    case 'F': return 12;
    default: return 6;
  }
}

const std::vector<Component> kAll = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'B', 2}, {'B', 3}, {'B', 4},
                                     {'C', 2}, {'C', 3}, {'C', 4}, {'D', 3}, {'D', 4}, {'D', 5}, {'E', 6}, {'E', 7},
                                     {'E', 8}, {'F', 4}, {'G', 2}};

}  // namespace

TEST_CASE("parsing") {
  CHECK(parse_components("A2+B3") == std::vector<Component>{{'A', 2}, {'B', 3}});
  CHECK(parse_components("A2,B3") == std::vector<Component>{{'A', 2}, {'B', 3}});
  CHECK(components_to_string(parse_components("e6")) == "E6");
  for (const char* bad : {"", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "H3", "A0", "A"}) {
    CHECK_THROWS_AS(parse_components(bad), invalid_input);
  }
}

TEST_CASE("Cartan conventions") {
  CHECK(cartan_matrix({'B', 2}) == IntMatrix{{2, -1}, {-2, 2}});
  CHECK(cartan_matrix({'C', 2}) == IntMatrix{{2, -2}, {-1, 2}});
  CHECK(cartan_matrix({'G', 2}) == IntMatrix{{2, -3}, {-1, 2}});
  CHECK(cartan_matrix({'F', 4})[2][1] == -2);
  const auto e6 = cartan_matrix({'E', 6});
  CHECK(e6[0][2] == -1);
  CHECK(e6[1][3] == -1);
  CHECK(e6[2][3] == -1);
  CHECK(e6[0][1] == 0);
}

TEST_CASE("positive roots, heights and Coxeter numbers") {
  for (const auto& c : kAll) {
    const RootSystem r({c});
    CAPTURE(components_to_string({c}));
    CHECK(r.positive_roots().size() == closed_form_count(c));
    CHECK(coxeter_numbers(r) == std::vector<unsigned>{classical_coxeter(c)});
    std::set<std::vector<std::int64_t>> distinct;
    for (const auto& root : r.positive_roots()) {
      CHECK(std::all_of(root.coords.begin(), root.coords.end(), [](auto v) { return v >= 0; }));
      distinct.insert(root.coords);
    }
    CHECK(distinct.size() == r.positive_roots().size());
    for (std::size_t i = 0; i < r.rank(); ++i) {
      std::vector<std::int64_t> e(r.rank(), 0);
      e[i] = 1;
      CHECK(distinct.count(e) == 1);
    }
    // Closure under simple reflections (up to sign).
    for (const auto& root : r.positive_roots()) {
      for (std::size_t s = 0; s < r.rank(); ++s) {
        std::int64_t pairing = 0;
        for (std::size_t j = 0; j < r.rank(); ++j) pairing += r.cartan()[s][j] * root.coords[j];
        auto image = root.coords;
        image[s] -= pairing;
        const bool negative = std::all_of(image.begin(), image.end(), [](auto v) { return v <= 0; });
        if (negative) {
          for (auto& v : image) v = -v;
        }
        CHECK(distinct.count(image) == 1);
      }
    }
  }
  const auto a2 = rs("A2");
  std::vector<unsigned> heights;
  for (const auto& root : a2.positive_roots()) heights.push_back(root.height());
  CHECK(heights == std::vector<unsigned>{1, 1, 2});
  CHECK(rs("G2").highest_root(0).coords == std::vector<std::int64_t>{3, 2});
  CHECK(rs("C3").highest_root(0).coords == std::vector<std::int64_t>{2, 2, 1});
}

TEST_CASE("long and short roots") {
  auto count_short = [](const RootSystem& r) {
    return std::count_if(r.positive_roots().begin(), r.positive_roots().end(),
                         [](const Root& x) { return x.length == LengthClass::short_root; });
  };
  CHECK(count_short(rs("A4")) == 0);
  CHECK(count_short(rs("B3")) == 3);
  CHECK(count_short(rs("C3")) == 6);
  CHECK(count_short(rs("F4")) == 12);
  CHECK(count_short(rs("G2")) == 3);
  // C_n: the last simple root is long.
  CHECK(rs("C3").positive_roots()[2].length == LengthClass::long_root);
}

TEST_CASE("good primes") {
  CHECK(is_good_prime(rs("A5"), 2));
  CHECK(is_good_prime(rs("A5"), 3));
  CHECK_FALSE(is_good_prime(rs("G2"), 3));
  CHECK_FALSE(is_good_prime(rs("B3"), 2));
  CHECK(is_good_prime(rs("B3"), 3));
  CHECK_FALSE(is_good_prime(rs("E8"), 5));
  CHECK(is_good_prime(rs("E8"), 7));
}

TEST_CASE("coweight-one witnesses") {
  for (const auto& c : kAll) {
    const RootSystem r({c});
    const bool excluded = (c.type == 'E' && c.rank == 8) || c.type == 'F' || c.type == 'G';
    CHECK(coweight_one_witness(r)[0].simple_index.has_value() == !excluded);
  }
  CHECK(coweight_one_witness(rs("A3"))[0].simple_index == std::optional<std::size_t>(1));
  CHECK(coweight_one_witness(rs("C3"))[0].simple_index == std::optional<std::size_t>(3));
  const auto mixed = coweight_one_witness(rs("A2+G2"));
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].simple_index.has_value());
  CHECK_FALSE(mixed[1].simple_index.has_value());
}

TEST_CASE("cofundamental exponents") {
  for (const auto& c : kAll) {
    const RootSystem r({c});
    CHECK(cofundamental_exponent(r, cocharacter_lattice(r, LatticeKind::adjoint)) == 1);
  }
  for (unsigned n = 2; n <= 6; ++n) {
    const RootSystem r({{'A', n - 1}});
    CHECK(cofundamental_exponent(r, cocharacter_lattice(r, LatticeKind::simply_connected)) == n);
  }
  auto sc = [](const char* t) {
    const auto r = rs(t);
    return cofundamental_exponent(r, cocharacter_lattice(r, LatticeKind::simply_connected));
  };
  CHECK(sc("B3") == 2);
  CHECK(sc("C3") == 2);
  CHECK(sc("C4") == 2);
  CHECK(sc("D4") == 2);
  CHECK(sc("D5") == 4);
  CHECK(sc("E6") == 3);
  CHECK(sc("E7") == 2);
  CHECK(sc("E8") == 1);
  CHECK(sc("A1+A2") == 6);
  CHECK_THROWS_AS(cofundamental_exponent(rs("A2"), custom_lattice({{1, 2}, {2, 4}})), invalid_input);
  CHECK(cofundamental_exponent(rs("A2"), custom_lattice({{3, 0}, {0, 1}})) == 3);
}

TEST_CASE("divisibility and action index") {
  for (const char* t : {"A3", "B3", "C3"}) {
    const auto r = rs(t);
    const auto adj = character_lattice(r, LatticeKind::adjoint);
    for (std::size_t i = 0; i < r.positive_roots().size(); ++i) {
      for (std::int64_t n : {2, 3}) CHECK_FALSE(root_divisibility(r, adj, i, n));
      for (std::uint64_t q : {3, 4, 5, 7, 8, 9}) CHECK(root_action_index(r, adj, i, q) == 1);
    }
  }
  for (const char* t : {"C2", "C3"}) {
    const auto r = rs(t);
    const auto sc = character_lattice(r, LatticeKind::simply_connected);
    for (std::size_t i = 0; i < r.positive_roots().size(); ++i) {
      if (r.positive_roots()[i].length != LengthClass::long_root) continue;
      CHECK(root_divisibility(r, sc, i, 2));
      for (std::uint64_t q : {3, 5, 7, 9}) CHECK(root_action_index(r, sc, i, q) == 2);
      for (std::uint64_t q : {2, 4, 8}) CHECK(root_action_index(r, sc, i, q) == 1);
    }
  }
  const auto a2 = rs("A2");
  const auto w = character_lattice(a2, LatticeKind::simply_connected);
  for (std::size_t i = 0; i < a2.positive_roots().size(); ++i) CHECK_FALSE(root_divisibility(a2, w, i, 2));
  CHECK(root_in_lattice(a2, w, 0) == std::vector<std::int64_t>{2, -1});
  // A root outside a coarse lattice is reported.
  CHECK_THROWS_AS(root_in_lattice(a2, custom_lattice({{3, 0}, {0, 3}}), 0), invalid_input);
}

TEST_CASE("characteristic-2 bound") {
  const auto d4 = rs("D4");
  const auto b = char2_vanishing_bound(d4, cocharacter_lattice(d4, LatticeKind::adjoint), 3);
  CHECK(b.bound == Rational{3, 1});
  const auto a2 = rs("A2");
  const auto b2 = char2_vanishing_bound(a2, cocharacter_lattice(a2, LatticeKind::simply_connected), 2);
  CHECK(b2.exponent == 3);
  CHECK(b2.gcd == 3);
  CHECK(b2.bound == Rational{2, 3});
  const auto c4 = rs("C4");
  CHECK(char2_vanishing_bound(c4, cocharacter_lattice(c4, LatticeKind::simply_connected), 5).bound == Rational{5, 1});
  for (const char* t : {"E8", "F4", "G2", "A2+G2"}) {
    const auto r = rs(t);
    CHECK_THROWS_AS(char2_vanishing_bound(r, cocharacter_lattice(r, LatticeKind::adjoint), 2), invalid_input);
  }
}

TEST_CASE("Lie-type graded algebra") {
  const auto a2 = rs("A2");
  const auto adj = cocharacter_lattice(a2, LatticeKind::adjoint);
  const auto s1 = lie_gr_algebra(a2, adj, 2, 1);
  CHECK(s1.size() == 3);
  CHECK(s1.torus_rank() == 2);
  CHECK(s1.moduli() == std::vector<std::int64_t>{1, 1});
  const auto s2 = lie_gr_algebra(a2, adj, 2, 2);
  CHECK(s2.size() == 6);
  CHECK(lie_gr_algebra(rs("B2"), cocharacter_lattice(rs("B2"), LatticeKind::adjoint), 2, 2).size() == 8);
  const auto odd = lie_gr_algebra(a2, adj, 3, 1);
  CHECK(odd.size() == 6);
  CHECK(odd.generator(0).parity == Parity::exterior);
  // Adjoint type, p = 2: invariants vanish strictly below degree r.
  for (const char* t : {"A2", "A3", "B2", "C3", "D4"}) {
    const auto r = rs(t);
    for (unsigned deg = 1; deg <= 3; ++deg) {
      const auto alg = lie_gr_algebra(r, cocharacter_lattice(r, LatticeKind::adjoint), 2, deg);
      const auto dims = dimension_series(alg, deg, SeriesFilter::invariant).dims;
      for (unsigned d = 1; d < deg; ++d) CHECK(dims[d] == 0);
    }
  }
}
