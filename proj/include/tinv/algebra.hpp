#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tinv/ffq.hpp"

namespace tinv {

enum class Parity { exterior, polynomial };

struct TorusWeight {
  std::vector<std::int64_t> coords;
  friend bool operator==(const TorusWeight&, const TorusWeight&) = default;
};

struct GeneratorSpec {
  std::string id;
  Parity parity = Parity::polynomial;
  unsigned degree = 2;
  TorusWeight weight;
  std::string tag;
};

// Free graded-commutative algebra (exterior tensor polynomial) with a torus
// weight per generator. Weights are stored reduced into [0, modulus).
class AlgebraSpec {
 public:
  AlgebraSpec(ffq::PrimePower field, std::size_t torus_rank, std::vector<std::int64_t> moduli,
              std::vector<GeneratorSpec> generators);

  const ffq::PrimePower& field() const { return field_; }
  std::size_t torus_rank() const { return moduli_.size(); }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  bool char2_mode() const { return field_.p == 2; }
  const std::vector<GeneratorSpec>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  const GeneratorSpec& generator(std::size_t i) const { return generators_[i]; }

  std::optional<std::size_t> index_of(const std::string& id) const;
  std::size_t require_index(const std::string& id) const;

  // Same field/torus, generators filtered to `ids` in their original order.
  AlgebraSpec restricted_to(const std::vector<std::string>& ids) const;

 private:
  ffq::PrimePower field_;
  std::vector<std::int64_t> moduli_;
  std::vector<GeneratorSpec> generators_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Sparse exponents keyed by generator index, ascending, all exponents > 0.
struct Monomial {
  std::vector<std::pair<std::size_t, std::uint32_t>> exps;

  static Monomial from_dense(const std::vector<std::uint32_t>& dense);
  std::vector<std::uint32_t> dense(std::size_t generator_count) const;
  std::uint32_t exponent(std::size_t index) const;
  bool empty() const { return exps.empty(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical order: descending lexicographic comparison of dense exponent
// vectors in generator order (higher power of an earlier generator first).
bool canonical_less(const Monomial& a, const Monomial& b);
void sort_canonical(std::vector<Monomial>& ms);

// Validates exponents (exterior <= 1) and generator ids; throws invalid_input.
Monomial make_monomial(const AlgebraSpec& alg,
                       const std::vector<std::pair<std::string, std::uint32_t>>& exps);
unsigned monomial_degree(const AlgebraSpec& alg, const Monomial& m);
std::string monomial_to_string(const AlgebraSpec& alg, const Monomial& m);
std::vector<std::size_t> support(const Monomial& m);

TorusWeight monomial_weight(const AlgebraSpec& alg, const Monomial& m);

struct EnumerationOptions {
  bool prune = true;
  std::uint64_t cap = 10'000'000;
};

std::vector<Monomial> enumerate_monomials(const AlgebraSpec& alg, unsigned degree,
                                          const EnumerationOptions& opts = {});
std::vector<Monomial> invariant_monomials(const AlgebraSpec& alg, unsigned degree,
                                          const EnumerationOptions& opts = {});

// Independent route: for each torus coordinate, acts with a scalar of order
// equal to its modulus and tests the eigenvalue product against 1 in F_q.
std::vector<Monomial> invariant_monomials_oracle(const AlgebraSpec& alg, unsigned degree,
                                                 std::uint64_t cap = 10'000'000);

enum class SeriesFilter { all, invariant, invariant_nilpotent };

struct DimSeries {
  std::vector<std::uint64_t> dims;
};

DimSeries dimension_series(const AlgebraSpec& alg, unsigned max_degree, SeriesFilter filter,
                           const EnumerationOptions& opts = {});

struct DetectionResult {
  unsigned degree = 0;
  std::uint64_t invariant_dim = 0;
  std::uint64_t kernel_dim = 0;
  std::uint64_t cokernel_dim = 0;
  std::vector<Monomial> kernel_basis;
};

// Kernel of the projection of the degree-d invariants onto the spans of the
// family members (as generator-id sets).
DetectionResult detection_kernel(const AlgebraSpec& alg, unsigned degree,
                                 const std::vector<std::vector<std::string>>& family,
                                 const EnumerationOptions& opts = {});

struct QuillenReport {
  std::uint32_t p = 0, r = 0;
  bool pass = false;
  std::uint64_t tuples_checked = 0;
  std::vector<std::vector<std::uint32_t>> equality_tuples;
  std::optional<std::vector<std::uint32_t>> counterexample;
};

// Exhaustive check over tuples with sum <= r(p-1) of: (p^r - 1) | sum p^k a_k
// forces sum a_k >= r(p-1), with equality only at a_k = p - 1.
QuillenReport quillen_verify(std::uint64_t p, std::uint64_t r);

}  // namespace tinv
