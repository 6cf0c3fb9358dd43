// Reference implementations used only by the tests. They deliberately avoid
// the library's own algorithms.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Poly = std::vector<std::uint32_t>;  // little-endian over F_p

inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  auto trim = [](Poly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  std::uint32_t lead_inv = 1;
  while (lead_inv * b.back() % p != 1) ++lead_inv;
  while (a.size() >= b.size()) {
    const std::uint32_t f = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - f * b[i] % p) % p;
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool irreducible_by_trial_division(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i, c /= p) g[i] = static_cast<std::uint32_t>(c % p);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Coefficients of prod_ext (1 + t^1) * prod_poly 1/(1 - t^deg) up to t^D.
inline std::vector<std::uint64_t> hilbert_series(std::size_t exterior, const std::vector<unsigned>& poly_degrees,
                                                 unsigned max_degree) {
  std::vector<std::uint64_t> s(max_degree + 1, 0);
  s[0] = 1;
  for (std::size_t e = 0; e < exterior; ++e) {
    for (unsigned d = max_degree; d >= 1; --d) s[d] += s[d - 1];
  }
  for (unsigned g : poly_degrees) {
    for (unsigned d = g; d <= max_degree; ++d) s[d] += s[d - g];
  }
  return s;
}

inline std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[s], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

// Invariant factors from determinantal divisors d_k = gcd of k x k minors.
inline std::vector<std::int64_t> invariant_factors_by_minors(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  const std::size_t n = std::min(rows, cols);
  std::vector<std::int64_t> d(n + 1, 0);
  d[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::int64_t g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          std::vector<std::int64_t> row;
          for (std::size_t j = 0; j < cols; ++j) {
            if (csel[j]) row.push_back(a[i][j]);
          }
          minor.push_back(std::move(row));
        }
        g = std::gcd(g, det(minor));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    d[k] = g;
  }
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(d[k - 1] == 0 ? 0 : d[k] / d[k - 1]);
  return out;
}

}  // namespace oracle
