#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tinv/algebra.hpp"
#include "tinv/ffq.hpp"

namespace tinv {

// Matrix position (i, j), 1-based, i < j.
struct Position {
  unsigned i = 1, j = 2;
  friend auto operator<=>(const Position&, const Position&) = default;
};

// H*(gr U_n; F_q) with the diagonal torus: for each (i,j,k) an exterior x and
// a polynomial y generator (p odd) or a polynomial z (p = 2), all of weight
// p^k (e_i - e_j) mod q-1.
struct GrUnSpec {
  unsigned n = 2;
  ffq::PrimePower field;
  AlgebraSpec algebra;
  std::vector<Position> positions;

  std::vector<std::string> ids_at(Position pos) const;
};

GrUnSpec build_gr_un(std::uint64_t n, std::uint64_t p, std::uint64_t r);

struct SubgroupKind {
  enum class Type { hook, edge_L, root, superdiag } type = Type::hook;
  unsigned a = 1, b = 2;

  static SubgroupKind hook(unsigned l, unsigned m) { return {Type::hook, l, m}; }
  static SubgroupKind edge(unsigned i) { return {Type::edge_L, i, 0}; }
  static SubgroupKind root(unsigned i, unsigned j) { return {Type::root, i, j}; }
  static SubgroupKind superdiag(unsigned k) { return {Type::superdiag, k, 0}; }
};

struct SubgroupSupport {
  std::string name;
  std::vector<Position> positions;
  std::vector<std::string> generator_ids;  // closed under twist index k
};

SubgroupSupport subgroup_support(const GrUnSpec& spec, SubgroupKind kind);

struct HookDetectionReport {
  unsigned n = 0;
  std::uint32_t p = 0, r = 0;
  unsigned degree = 0;
  std::string family_kind;  // "hook", "root" or "custom"
  std::vector<std::string> family;
  DimSeries series;  // invariant dims in degrees 0..degree
  bool vanishing_below = false;
  DetectionResult detection;
  bool pass = false;
};

// Detection at degree r(2p-3) against all hooks (p odd) or all root
// subgroups (p = 2) unless a family is supplied.
HookDetectionReport hook_detection(const GrUnSpec& spec,
                                   const std::optional<std::vector<SubgroupSupport>>& family = {});

struct EssentialKernelReport {
  unsigned n = 0;
  std::uint32_t p = 0;
  unsigned degree = 0;
  AlgebraSpec hook_algebra;  // gr K = gr K_{1n}; kernel basis indexes into this
  std::vector<std::string> family;
  DetectionResult detection;
  std::uint64_t expected_dim = 0;
  std::optional<Monomial> expected_witness;
  bool discrepancy = false;
  bool caution = false;  // n = 3: only L_2 exists inside the hook
};

// r = 1, p odd: kernel at degree 2p-3 of gr K against the edge subgroups L_i.
EssentialKernelReport essential_kernel(std::uint64_t n, std::uint64_t p);

struct Ingredient {
  enum class Status { computed, cited } status = Status::computed;
  std::string fact;
  std::string quote;  // cited facts only
  std::optional<std::int64_t> value;
};

struct TheoremReport {
  std::string theorem;
  unsigned n = 0;
  std::uint32_t p = 0, r = 0;
  unsigned degree = 0;
  std::uint64_t dimension = 0;
  std::uint64_t lower_bound = 0;
  std::uint64_t upper_bound = 0;
  std::vector<Ingredient> ingredients;
  std::vector<std::string> kernel_basis;
  bool discrepancy = false;
};

// dim H^{r(2p-3)}(GL_n F_{p^r}; F_p) for r = 1 or p = 2.
TheoremReport theorem_lowest_gl(std::uint64_t n, std::uint64_t p, std::uint64_t r);
// dim H^r(B_n F_{2^r}; F_2) = n - 1.
TheoremReport theorem_borel_char2(std::uint64_t n, std::uint64_t r);

// Upper unitriangular M is regular unipotent iff every M[k][k+1] != 0.
bool regular_unipotent_check(const ffq::FqMatrix& m);

// Single n x n Jordan block nilpotent J (ones on the superdiagonal).
ffq::FqMatrix jordan_nilpotent(std::shared_ptr<const ffq::Field> field, std::size_t n);

struct CommutingSubgroupReport {
  unsigned n = 0;
  std::uint32_t p = 0, r = 0;
  std::vector<ffq::FqMatrix> generators;
  bool generators_commute = false;
  bool generators_order_p = false;
  std::uint64_t group_order = 0;
  std::uint64_t nontrivial_elements = 0;
  std::uint64_t regular_elements = 0;
  bool closed = false;
  bool pass = false;
};

// Generators I + x^i J, i < r, for the power basis of F_{p^r}; 2 <= n <= p.
CommutingSubgroupReport commuting_regular_subgroup(std::uint64_t n, std::uint64_t p, std::uint64_t r);

struct ExponentReport {
  unsigned n = 0;
  std::uint32_t p = 0, r = 0;
  ffq::EnumerationMode mode;
  std::uint64_t checked = 0;
  bool exponent_p = false;  // every checked g has g^p = I
  std::optional<ffq::FqMatrix> witness;
  std::optional<std::uint64_t> witness_order;
  bool expected_exponent_p = false;  // n <= p
  bool pass = false;
};

ExponentReport exponent_check(std::uint64_t n, std::uint64_t p, std::uint64_t r,
                              ffq::EnumerationMode mode);

// Coefficient of u^{j(p-1)} in (1 - u^{p-1})^{p^{n-1}-1}, reduced mod p.
std::uint32_t chern_series_coefficient(std::uint64_t n, std::uint64_t p, std::uint64_t j);
// The u^{p-1} coefficient.
std::uint32_t chern_coefficient(std::uint64_t n, std::uint64_t p);

// r * floor(n^2 / 4).
std::uint64_t max_rank(std::uint64_t n, std::uint64_t r);

}  // namespace tinv
