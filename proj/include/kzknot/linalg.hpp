#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <vector>

namespace kzknot {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  RationalVector row(std::size_t r) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Row space of a rational matrix kept in reduced row-echelon form. Rows are
// ordered by pivot column; every pivot entry is 1 and is the only nonzero in
// its column.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<RationalVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t col) const;
  // Non-pivot columns in increasing order: coordinates on the quotient.
  std::vector<std::size_t> free_columns() const;

  // Adds v to the spanning set. Returns false if v was already in the span.
  bool insert(RationalVector v);

  // Per column j: sum over basis rows of |row[j]| as a double, 0 on pivots. The error
  // of reduced coordinate j is at most err(j) + sum_r |row_r[j]| err(pivot_r).
  std::vector<double> column_weights() const;

  friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

 private:
  std::size_t ambient_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

SubspaceBasis row_reduce(const RationalMatrix& m);

RationalVector reduce_mod(RationalVector v, const SubspaceBasis& s);

struct FloatReduction {
  ComplexVector value;
  // 1 + max over free columns of the summed |basis entries| in that column;
  // bounds how much an input perturbation can grow through the reduction.
  double amplification = 1.0;
};

FloatReduction reduce_mod(ComplexVector v, const SubspaceBasis& s);

bool in_span(const RationalVector& v, const SubspaceBasis& s);

bool is_zero(const RationalVector& v);

}  // namespace kzknot
