#pragma once

// Fraction-free Gaussian elimination over the integers.

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

using IntMatrix = std::vector<std::vector<mpz_class>>;

inline std::size_t bareiss_rank(IntMatrix a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
        mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Clears denominators row by row.
inline IntMatrix integer_rows(const std::vector<std::vector<mpq_class>>& m) {
  IntMatrix out;
  for (const auto& row : m) {
    mpz_class l = 1;
    for (const mpq_class& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> r;
    for (const mpq_class& x : row) r.push_back(mpz_class(x.get_num() * (l / x.get_den())));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace oracle
