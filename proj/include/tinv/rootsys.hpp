#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tinv/algebra.hpp"
#include "tinv/smith.hpp"

namespace tinv {

struct Component {
  char type = 'A';  // A..G
  unsigned rank = 1;
  friend bool operator==(const Component&, const Component&) = default;
};

// "A2", "B3+C2" or "A2,B3".
std::vector<Component> parse_components(const std::string& text);
std::string components_to_string(const std::vector<Component>& comps);

enum class LengthClass { long_root, short_root };

struct Root {
  std::vector<std::int64_t> coords;  // simple-root coordinates
  std::size_t component = 0;
  LengthClass length = LengthClass::long_root;
  unsigned height() const;
};

// Cartan convention: cartan[i][j] = <alpha_i^vee, alpha_j>. Simple roots are
// numbered per Bourbaki within each component; components are concatenated.
class RootSystem {
 public:
  explicit RootSystem(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }
  const IntMatrix& cartan() const { return cartan_; }
  std::size_t rank() const { return cartan_.size(); }
  // Sorted by (height, coords).
  const std::vector<Root>& positive_roots() const { return roots_; }
  // First global simple index of each component.
  std::size_t component_offset(std::size_t c) const { return offsets_[c]; }
  const Root& highest_root(std::size_t c) const;

 private:
  std::vector<Component> components_;
  std::vector<std::size_t> offsets_;
  IntMatrix cartan_;
  std::vector<Root> roots_;
};

IntMatrix cartan_matrix(const Component& c);

std::vector<unsigned> coxeter_numbers(const RootSystem& rs);
bool is_good_prime(const RootSystem& rs, std::uint64_t p);

struct CoweightWitness {
  std::size_t component = 0;
  std::optional<std::size_t> simple_index;  // 1-based within the component
};
std::vector<CoweightWitness> coweight_one_witness(const RootSystem& rs);

enum class LatticeKind { adjoint, simply_connected, custom };

struct LatticeSpec {
  LatticeKind kind = LatticeKind::adjoint;
  IntMatrix basis;  // rows are basis vectors
};

// Cocharacter lattice in fundamental-coweight coordinates: identity for
// adjoint, Cartan rows (simple coroots) for simply connected.
LatticeSpec cocharacter_lattice(const RootSystem& rs, LatticeKind kind);
// Character lattice in fundamental-weight coordinates: root lattice (simple
// roots, the Cartan columns) for adjoint, identity for simply connected.
LatticeSpec character_lattice(const RootSystem& rs, LatticeKind kind);
LatticeSpec custom_lattice(IntMatrix basis);

// Exponent of the quotient of the coweight lattice by the cocharacter lattice.
std::int64_t cofundamental_exponent(const RootSystem& rs, const LatticeSpec& cochar);

// Coordinates of a positive root in the character lattice basis; throws
// invalid_input if the root does not lie in the lattice.
std::vector<std::int64_t> root_in_lattice(const RootSystem& rs, const LatticeSpec& chars,
                                          std::size_t root_index);
bool root_divisibility(const RootSystem& rs, const LatticeSpec& chars, std::size_t root_index,
                       std::int64_t n);
std::int64_t root_action_index(const RootSystem& rs, const LatticeSpec& chars,
                               std::size_t root_index, std::uint64_t q);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct Char2Bound {
  std::int64_t exponent = 1;
  std::int64_t gcd = 1;
  Rational bound;
};

// r / gcd(e, 2^r - 1); rejects E8, F4 and G2 components.
Char2Bound char2_vanishing_bound(const RootSystem& rs, const LatticeSpec& cochar, std::uint64_t r);

// H*(gr U) model: one generator family per positive root and twist k with
// weight p^k <alpha, basis row> mod q-1 in each cocharacter coordinate.
AlgebraSpec lie_gr_algebra(const RootSystem& rs, const LatticeSpec& cochar, std::uint64_t p,
                           std::uint64_t r);

}  // namespace tinv
