#pragma once

// Data-parallel inner loops. Each kernel has a serial reference version and an
// OpenMP version; the dispatching entry point picks OpenMP above a size
// threshold. Tests check the two agree and the benchmark times them.

#include <cstddef>
#include <span>
#include <vector>

#include "kzknot/linalg.hpp"

namespace kzknot::kernels {

// Indexing of the truncated free algebra on `pairs` letters: words of length
// k occupy [offset(k), offset(k+1)) and are numbered in base `pairs` with the
// first (bottom) letter most significant.
struct WordLayout {
  int pairs = 0;
  int max_degree = 0;
  std::vector<std::size_t> offsets;  // size max_degree + 2

  WordLayout(int pairs, int max_degree);
  std::size_t size() const { return offsets.back(); }
  std::size_t offset(int k) const { return offsets[k]; }
  std::size_t count(int k) const { return offsets[k + 1] - offsets[k]; }
  int degree_of(std::size_t index) const;
};

// out = W * A where A = sum_p coeff[p] H_p appends letter p on top of each
// word; words of top degree are dropped. out[0] = 0.
void apply_connection_serial(const WordLayout& layout, std::span<const Complex> w,
                             std::span<const Complex> coeff, std::span<Complex> out);
void apply_connection_omp(const WordLayout& layout, std::span<const Complex> w,
                          std::span<const Complex> coeff, std::span<Complex> out);
void apply_connection(const WordLayout& layout, std::span<const Complex> w,
                      std::span<const Complex> coeff, std::span<Complex> out);

// out = y + h * sum_s weights[s] * stages[s]
void combine_stages_serial(std::span<const Complex> y, double h, std::span<const double> weights,
                           std::span<const ComplexVector> stages, std::span<Complex> out);
void combine_stages_omp(std::span<const Complex> y, double h, std::span<const double> weights,
                        std::span<const ComplexVector> stages, std::span<Complex> out);
void combine_stages(std::span<const Complex> y, double h, std::span<const double> weights,
                    std::span<const ComplexVector> stages, std::span<Complex> out);

// For every row r: row_r -= row_r[col] * pivot_row. pivot_row[col] must be 1.
void eliminate_column_serial(std::span<RationalVector> rows, const RationalVector& pivot_row,
                             std::size_t col);
void eliminate_column_omp(std::span<RationalVector> rows, const RationalVector& pivot_row,
                          std::size_t col);
void eliminate_column(std::span<RationalVector> rows, const RationalVector& pivot_row,
                      std::size_t col);

}  // namespace kzknot::kernels
