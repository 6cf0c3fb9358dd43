#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace tinv::ffq {

bool is_prime(std::uint64_t n);

// q = p^r with q <= 2^20.
struct PrimePower {
  std::uint32_t p = 2;
  std::uint32_t r = 1;
  std::uint32_t q = 2;

  static PrimePower make(std::uint64_t p, std::uint64_t r);
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

// Little-endian coefficients over F_p.
using Poly = std::vector<std::uint32_t>;

// Lexicographically smallest monic irreducible polynomial of degree r over
// F_p, comparing coefficient tuples (c_0, ..., c_{r-1}) from c_0 on.
Poly find_irreducible(std::uint64_t p, std::uint64_t r);

// Rabin's irreducibility test for a monic polynomial over F_p.
bool is_irreducible(const Poly& f, std::uint32_t p);

struct FqElement {
  std::vector<std::uint32_t> coeffs;  // little-endian, length r

  friend bool operator==(const FqElement&, const FqElement&) = default;
  friend auto operator<=>(const FqElement&, const FqElement&) = default;
};

// F_{p^r} realized as F_p[x]/(f) with f = find_irreducible(p, r).
class Field {
 public:
  explicit Field(PrimePower size);

  const PrimePower& size() const { return size_; }
  std::uint32_t p() const { return size_.p; }
  std::uint32_t r() const { return size_.r; }
  std::uint32_t q() const { return size_.q; }
  const Poly& modulus() const { return modulus_; }

  FqElement zero() const;
  FqElement one() const;
  // Validates length and reduces nothing: entries must already lie in [0, p).
  FqElement element(std::span<const std::uint32_t> coeffs) const;
  FqElement from_int(std::uint64_t v) const;  // image of an integer under Z -> F_p
  // x^i, the i-th power-basis vector.
  FqElement basis(std::uint32_t i) const;

  // Elements in lexicographic order of (c_0, ..., c_{r-1}); rank in [0, q).
  FqElement from_lex_rank(std::uint64_t rank) const;
  std::uint64_t lex_rank(const FqElement& a) const;

  FqElement add(const FqElement& a, const FqElement& b) const;
  FqElement sub(const FqElement& a, const FqElement& b) const;
  FqElement neg(const FqElement& a) const;
  FqElement mul(const FqElement& a, const FqElement& b) const;
  FqElement pow(FqElement a, std::uint64_t k) const;
  FqElement inv(const FqElement& a) const;
  bool is_zero(const FqElement& a) const;
  bool is_one(const FqElement& a) const;

  std::uint64_t multiplicative_order(const FqElement& a) const;
  // Lexicographically smallest element of order q - 1 (cached).
  const FqElement& multiplicative_generator() const;

 private:
  PrimePower size_;
  Poly modulus_;
  std::vector<std::uint64_t> group_order_primes_;  // prime divisors of q - 1
  mutable std::optional<FqElement> generator_;
};

class FqMatrix {
 public:
  FqMatrix(std::shared_ptr<const Field> field, std::size_t n);  // zero matrix
  static FqMatrix identity(std::shared_ptr<const Field> field, std::size_t n);

  std::size_t dim() const { return n_; }
  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }

  // Zero-based indices.
  const FqElement& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, FqElement v);

  FqMatrix operator*(const FqMatrix& rhs) const;
  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

  bool is_identity() const;
  bool is_upper_unitriangular() const;

 private:
  std::shared_ptr<const Field> field_;
  std::size_t n_;
  std::vector<FqElement> entries_;
};

FqMatrix mat_pow(const FqMatrix& m, std::uint64_t k);

// Multiplicative order of an invertible matrix, searched up to `limit`.
std::optional<std::uint64_t> matrix_order(const FqMatrix& m, std::uint64_t limit);

constexpr std::uint64_t kMaxGroupEnumeration = 1'000'000;

struct EnumerationMode {
  enum class Kind { all, sample } kind = Kind::all;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static EnumerationMode all() { return {}; }
  static EnumerationMode sample(std::uint64_t count, std::uint64_t seed) {
    return {Kind::sample, count, seed};
  }
};

// Single-consumer stream over U_n(F_q). In `all` mode the superdiagonal part
// is traversed as an odometer over positions (1,2), (1,3), ..., (n-1,n) in
// row-major order, last position fastest, each entry in lex-rank order.
class UnitriangularElements {
 public:
  UnitriangularElements(std::shared_ptr<const Field> field, std::size_t n, EnumerationMode mode);

  std::optional<FqMatrix> next();
  std::uint64_t total() const { return total_; }

 private:
  FqMatrix build() const;

  std::shared_ptr<const Field> field_;
  std::size_t n_;
  EnumerationMode mode_;
  std::vector<std::pair<std::size_t, std::size_t>> positions_;
  std::vector<std::uint64_t> digits_;
  std::uint64_t total_ = 0;
  std::uint64_t emitted_ = 0;
  std::mt19937_64 rng_;
};

// q^(n(n-1)/2), saturating at UINT64_MAX.
std::uint64_t unitriangular_order(std::uint64_t q, std::size_t n);

}  // namespace tinv::ffq
