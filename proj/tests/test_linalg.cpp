#include <random>

#include "doctest.h"
#include "kzknot/linalg.hpp"
#include "oracles/bareiss.hpp"

using namespace kzknot;

namespace {

Rational frac(long n, long d) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t rank_cap) {
  // Product of random rows x rank_cap and rank_cap x cols factors, so low ranks occur.
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  auto entry = [&] { return frac(num(rng), den(rng)); };
  std::vector<RationalVector> left(rows, RationalVector(rank_cap)), right(rank_cap, RationalVector(cols));
  for (auto& r : left)
    for (auto& x : r) x = entry();
  for (auto& r : right)
    for (auto& x : r) x = entry();
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < rank_cap; ++k) m(i, j) += left[i][k] * right[k][j];
  return m;
}

std::vector<RationalVector> rows_of(const RationalMatrix& m) {
  std::vector<RationalVector> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

RationalVector q(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_SUITE("exactlin") {

TEST_CASE("row_reduce examples") {
  SubspaceBasis a = row_reduce(RationalMatrix::from_rows({q({1, 2}), q({2, 4})}, 2));
  CHECK(a.rank() == 1);
  CHECK(a.rows()[0] == q({1, 2}));
  CHECK(row_reduce(RationalMatrix(3, 4)).rank() == 0);
  CHECK(row_reduce(RationalMatrix::from_rows({q({0, 1}), q({1, 0})}, 2)).rank() == 2);
}

TEST_CASE("rank agrees with fraction-free elimination") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8, cap = 1 + rng() % 8;
    const RationalMatrix m = random_matrix(rng, rows, cols, cap);
    const SubspaceBasis s = row_reduce(m);
    CHECK(s.rank() == oracle::bareiss_rank(oracle::integer_rows(rows_of(m))));
    CHECK(s.rank() <= std::min(rows, cols));
  }
}

TEST_CASE("reduced row-echelon shape") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const SubspaceBasis s = row_reduce(random_matrix(rng, 6, 7, 1 + rng() % 6));
    for (std::size_t i = 0; i < s.rank(); ++i) {
      if (i > 0) CHECK(s.pivots()[i] > s.pivots()[i - 1]);
      for (std::size_t k = 0; k < s.rank(); ++k)
        CHECK(s.rows()[k][s.pivots()[i]] == (i == k ? 1 : 0));
    }
    // Re-reducing a basis reproduces it.
    CHECK(row_reduce(RationalMatrix::from_rows(s.rows(), 7)) == s);
  }
}

TEST_CASE("reduce_mod properties") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalMatrix m = random_matrix(rng, 4, 6, 1 + rng() % 4);
    const SubspaceBasis s = row_reduce(m);
    RationalVector v(6);
    for (auto& x : v) x = frac(num(rng), 1 + static_cast<long>(rng() % 4));
    const RationalVector r = reduce_mod(v, s);
    CHECK(reduce_mod(r, s) == r);
    for (std::size_t p : s.pivots()) CHECK(r[p] == 0);
    RationalVector diff(6);
    for (std::size_t i = 0; i < 6; ++i) diff[i] = r[i] - v[i];
    CHECK(in_span(diff, s));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      CHECK(is_zero(reduce_mod(m.row(i), s)));
      CHECK(in_span(m.row(i), s));
    }
  }
}

TEST_CASE("non-canonical input is accepted") {
  SubspaceBasis s(2);
  s.insert({Rational(2, 4), Rational(0, 3)});
  CHECK(s.rows()[0] == RationalVector{1, 0});
  CHECK(is_zero(reduce_mod({Rational(3, 6), Rational(0, 5)}, s)));
}

TEST_CASE("in_span examples") {
  SubspaceBasis s(3);
  s.insert(q({1, 1, 0}));
  CHECK(in_span(q({2, 2, 0}), s));
  CHECK(in_span(q({0, 0, 0}), s));
  CHECK_FALSE(in_span(q({0, 0, 1}), s));
  CHECK_FALSE(s.insert(q({3, 3, 0})));
  CHECK(s.insert(q({0, 1, 1})));
  CHECK(s.rank() == 2);
  CHECK_THROWS_AS(reduce_mod(q({1, 2}), s), std::invalid_argument);
}

TEST_CASE("float reduction and amplification") {
  SubspaceBasis s(4);
  s.insert(q({1, 0, 2, -3}));
  s.insert(q({0, 1, 1, 5}));
  // Zero pivot coordinates: unchanged.
  const ComplexVector v = {0.0, 0.0, {1.5, -2.0}, 0.25};
  const FloatReduction r = reduce_mod(v, s);
  CHECK(r.value == v);

  // A perturbation of size delta in every coordinate moves the result by at
  // most amplification * delta.
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexVector a(4), b(4);
    const double delta = 1e-3;
    for (std::size_t i = 0; i < 4; ++i) {
      a[i] = {u(rng), u(rng)};
      b[i] = a[i] + Complex(delta * u(rng), 0.0);
    }
    const FloatReduction ra = reduce_mod(a, s), rb = reduce_mod(b, s);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(ra.value[i] - rb.value[i]) <= ra.amplification * delta * (1 + 1e-12));
  }
  CHECK(reduce_mod(v, s).amplification == doctest::Approx(1.0 + 8.0));
}

}  // TEST_SUITE
