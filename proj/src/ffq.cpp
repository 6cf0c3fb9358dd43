#include "tinv/ffq.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "tinv/errors.hpp"

namespace tinv::ffq {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimePower PrimePower::make(std::uint64_t p, std::uint64_t r) {
  if (!is_prime(p)) throw invalid_input("p = " + std::to_string(p) + " is not prime");
  if (r == 0) throw invalid_input("r must be positive");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    q *= p;
    if (q > kMaxFieldSize) {
      throw invalid_input("field size " + std::to_string(p) + "^" + std::to_string(r) +
                          " exceeds 2^20");
    }
  }
  return PrimePower{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r),
                    static_cast<std::uint32_t>(q)};
}

namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(c);
  return c;
}

// a mod m, m nonzero (not necessarily monic).
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mod(poly_mul(result, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(p^k) mod f
Poly frobenius_of_x(const Poly& f, std::uint32_t p, std::uint64_t k) {
  Poly h = poly_mod(Poly{0, 1}, f, p);
  for (std::uint64_t i = 0; i < k; ++i) h = poly_powmod(h, p, f, p);
  return h;
}

Poly sub_x(Poly h, std::uint32_t p) {
  if (h.size() < 2) h.resize(2, 0);
  h[1] = (h[1] + p - 1) % p;
  trim(h);
  return h;
}

}  // namespace

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const std::uint64_t r = f.size() - 1;
  if (r == 1) return true;
  // f | x^(p^r) - x
  if (!sub_x(frobenius_of_x(f, p, r), p).empty()) return false;
  for (std::uint64_t d : prime_divisors(r)) {
    Poly g = poly_gcd(f, sub_x(frobenius_of_x(f, p, r / d), p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly find_irreducible(std::uint64_t p, std::uint64_t r) {
  const PrimePower size = PrimePower::make(p, r);
  Poly f(size.r + 1, 0);
  f[size.r] = 1;
  // Lex order over (c_0, ..., c_{r-1}): c_{r-1} is the fastest digit.
  for (std::uint64_t rank = 0; rank < size.q; ++rank) {
    std::uint64_t v = rank;
    for (std::size_t i = size.r; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(v % size.p);
      v /= size.p;
    }
    if (is_irreducible(f, size.p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

Field::Field(PrimePower size) : size_(size), modulus_(find_irreducible(size.p, size.r)) {
  group_order_primes_ = prime_divisors(size_.q - 1);
}

FqElement Field::zero() const { return FqElement{std::vector<std::uint32_t>(size_.r, 0)}; }

FqElement Field::one() const {
  FqElement e = zero();
  e.coeffs[0] = 1;
  return e;
}

FqElement Field::element(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != size_.r) throw invalid_input("field element must have r coefficients");
  for (auto c : coeffs) {
    if (c >= size_.p) throw invalid_input("field element coefficient out of range [0, p)");
  }
  return FqElement{std::vector<std::uint32_t>(coeffs.begin(), coeffs.end())};
}

FqElement Field::from_int(std::uint64_t v) const {
  FqElement e = zero();
  e.coeffs[0] = static_cast<std::uint32_t>(v % size_.p);
  return e;
}

FqElement Field::basis(std::uint32_t i) const {
  Poly xi(i + 1, 0);
  xi[i] = 1;
  Poly red = poly_mod(std::move(xi), modulus_, size_.p);
  FqElement e = zero();
  std::copy(red.begin(), red.end(), e.coeffs.begin());
  return e;
}

FqElement Field::from_lex_rank(std::uint64_t rank) const {
  if (rank >= size_.q) throw invalid_input("lex rank out of range");
  FqElement e = zero();
  for (std::size_t i = size_.r; i-- > 0;) {
    e.coeffs[i] = static_cast<std::uint32_t>(rank % size_.p);
    rank /= size_.p;
  }
  return e;
}

std::uint64_t Field::lex_rank(const FqElement& a) const {
  std::uint64_t rank = 0;
  for (auto c : a.coeffs) rank = rank * size_.p + c;
  return rank;
}

FqElement Field::add(const FqElement& a, const FqElement& b) const {
  FqElement c = a;
  for (std::size_t i = 0; i < size_.r; ++i) c.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % size_.p;
  return c;
}

FqElement Field::neg(const FqElement& a) const {
  FqElement c = a;
  for (auto& x : c.coeffs) x = (size_.p - x) % size_.p;
  return c;
}

FqElement Field::sub(const FqElement& a, const FqElement& b) const { return add(a, neg(b)); }

FqElement Field::mul(const FqElement& a, const FqElement& b) const {
  Poly prod = poly_mod(poly_mul(a.coeffs, b.coeffs, size_.p), modulus_, size_.p);
  FqElement e = zero();
  std::copy(prod.begin(), prod.end(), e.coeffs.begin());
  return e;
}

FqElement Field::pow(FqElement a, std::uint64_t k) const {
  FqElement result = one();
  while (k) {
    if (k & 1) result = mul(result, a);
    a = mul(a, a);
    k >>= 1;
  }
  return result;
}

FqElement Field::inv(const FqElement& a) const {
  if (is_zero(a)) throw invalid_input("zero has no inverse");
  return pow(a, size_.q - 2);
}

bool Field::is_zero(const FqElement& a) const {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](auto c) { return c == 0; });
}

bool Field::is_one(const FqElement& a) const {
  if (a.coeffs.empty() || a.coeffs[0] != 1) return false;
  return std::all_of(a.coeffs.begin() + 1, a.coeffs.end(), [](auto c) { return c == 0; });
}

std::uint64_t Field::multiplicative_order(const FqElement& a) const {
  if (is_zero(a)) throw invalid_input("zero has no multiplicative order");
  std::uint64_t order = size_.q - 1;
  for (std::uint64_t ell : group_order_primes_) {
    while (order % ell == 0 && is_one(pow(a, order / ell))) order /= ell;
  }
  return order;
}

const FqElement& Field::multiplicative_generator() const {
  if (!generator_) {
    for (std::uint64_t rank = 1; rank < size_.q; ++rank) {
      FqElement cand = from_lex_rank(rank);
      if (is_zero(cand)) continue;
      if (multiplicative_order(cand) == size_.q - 1) {
        generator_ = std::move(cand);
        break;
      }
    }
  }
  return *generator_;
}

FqMatrix::FqMatrix(std::shared_ptr<const Field> field, std::size_t n)
    : field_(std::move(field)), n_(n), entries_(n * n, field_->zero()) {}

FqMatrix FqMatrix::identity(std::shared_ptr<const Field> field, std::size_t n) {
  FqMatrix m(std::move(field), n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = m.field_->one();
  return m;
}

void FqMatrix::set(std::size_t i, std::size_t j, FqElement v) {
  if (v.coeffs.size() != field_->r()) throw invalid_input("entry from a different field");
  entries_[i * n_ + j] = std::move(v);
}

FqMatrix FqMatrix::operator*(const FqMatrix& rhs) const {
  if (rhs.n_ != n_ || !(rhs.field_->size() == field_->size())) {
    throw invalid_input("matrix dimension or field mismatch");
  }
  const Field& f = *field_;
  FqMatrix out(field_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const FqElement& a = at(i, k);
      if (f.is_zero(a)) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const FqElement& b = rhs.at(k, j);
        if (f.is_zero(b)) continue;
        out.entries_[i * n_ + j] = f.add(out.entries_[i * n_ + j], f.mul(a, b));
      }
    }
  }
  return out;
}

bool FqMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const bool ok = i == j ? field_->is_one(at(i, j)) : field_->is_zero(at(i, j));
      if (!ok) return false;
    }
  }
  return true;
}

bool FqMatrix::is_upper_unitriangular() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!field_->is_one(at(i, i))) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (!field_->is_zero(at(i, j))) return false;
    }
  }
  return true;
}

FqMatrix mat_pow(const FqMatrix& m, std::uint64_t k) {
  FqMatrix result = FqMatrix::identity(m.field_ptr(), m.dim());
  FqMatrix base = m;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<std::uint64_t> matrix_order(const FqMatrix& m, std::uint64_t limit) {
  FqMatrix acc = m;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (acc.is_identity()) return k;
    acc = acc * m;
  }
  return std::nullopt;
}

std::uint64_t unitriangular_order(std::uint64_t q, std::size_t n) {
  const std::uint64_t positions = n * (n - 1) / 2;
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < positions; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / q) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= q;
  }
  return total;
}

UnitriangularElements::UnitriangularElements(std::shared_ptr<const Field> field, std::size_t n,
                                             EnumerationMode mode)
    : field_(std::move(field)), n_(n), mode_(mode), rng_(mode.seed) {
  if (n == 0) throw invalid_input("matrix dimension must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) positions_.emplace_back(i, j);
  }
  digits_.assign(positions_.size(), 0);
  if (mode_.kind == EnumerationMode::Kind::all) {
    total_ = unitriangular_order(field_->q(), n);
    if (total_ > kMaxGroupEnumeration) {
      throw resource_limit("|U_" + std::to_string(n) + "(F_" + std::to_string(field_->q()) +
                           ")| exceeds the enumeration cap of 10^6; use sampling");
    }
  } else {
    total_ = mode_.count;
  }
}

FqMatrix UnitriangularElements::build() const {
  FqMatrix m = FqMatrix::identity(field_, n_);
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    m.set(positions_[k].first, positions_[k].second, field_->from_lex_rank(digits_[k]));
  }
  return m;
}

std::optional<FqMatrix> UnitriangularElements::next() {
  if (emitted_ >= total_) return std::nullopt;
  if (mode_.kind == EnumerationMode::Kind::sample) {
    // Raw engine output keeps samples identical across standard libraries.
    for (auto& d : digits_) d = rng_() % field_->q();
  } else if (emitted_ > 0) {
    for (std::size_t k = digits_.size(); k-- > 0;) {
      if (++digits_[k] < field_->q()) break;
      digits_[k] = 0;
    }
  }
  ++emitted_;
  return build();
}

}  // namespace tinv::ffq
