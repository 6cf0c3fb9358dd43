#include "tinv/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/rational.hpp>

#include "tinv/errors.hpp"

namespace tinv {

namespace {

std::int64_t checked_sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod = 0, out = 0;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
    throw invalid_input("integer overflow in Smith normal form");
  }
  return out;
}

void row_op(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] = checked_sub_mul(m[dst][j], q, m[src][j]);
}

void col_op(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  for (auto& row : m) row[dst] = checked_sub_mul(row[dst], q, row[src]);
}

}  // namespace

std::vector<std::int64_t> invariant_factors(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (m[i][j] != 0 && (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) goto done;
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        row_op(m, i, t, m[i][t] / m[t][t]);
        clean &= m[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        col_op(m, j, t, m[t][j] / m[t][t]);
        clean &= m[t][j] == 0;
      }
      if (!clean) continue;

      // Divisibility of the trailing block by the pivot.
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row == rows) break;
      row_op(m, t, bad_row, -1);
    }
  }
done:
  std::vector<std::int64_t> out(diag, 0);
  for (std::size_t t = 0; t < diag; ++t) out[t] = std::llabs(m[t][t]);
  std::stable_partition(out.begin(), out.end(), [](std::int64_t v) { return v != 0; });
  return out;
}

std::int64_t determinant(const IntMatrix& m) {
  using Q = boost::rational<std::int64_t>;
  const std::size_t n = m.size();
  std::vector<std::vector<Q>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw invalid_input("determinant of a non-square matrix");
    a[i].assign(m[i].begin(), m[i].end());
  }
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].numerator() == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Q f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return boost::rational_cast<std::int64_t>(det);
}

}  // namespace tinv
