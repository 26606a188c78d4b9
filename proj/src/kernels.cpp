#include "kzknot/kernels.hpp"

#include <stdexcept>

namespace kzknot::kernels {

namespace {
// Below these sizes thread start-up costs more than the loop.
constexpr std::size_t kParallelWords = 2048;
constexpr std::size_t kParallelRows = 32;
}  // namespace

WordLayout::WordLayout(int pairs_, int max_degree_) : pairs(pairs_), max_degree(max_degree_) {
  if (pairs < 0 || max_degree < 0) throw std::invalid_argument("bad word layout");
  offsets.resize(max_degree + 2);
  offsets[0] = 0;
  std::size_t count = 1;
  for (int k = 0; k <= max_degree; ++k) {
    offsets[k + 1] = offsets[k] + count;
    count *= static_cast<std::size_t>(pairs);
  }
}

int WordLayout::degree_of(std::size_t index) const {
  for (int k = 0; k <= max_degree; ++k)
    if (index < offsets[k + 1]) return k;
  throw std::out_of_range("word index out of range");
}

void apply_connection_serial(const WordLayout& layout, std::span<const Complex> w,
                             std::span<const Complex> coeff, std::span<Complex> out) {
  const std::size_t P = static_cast<std::size_t>(layout.pairs);
  out[0] = 0.0;
  for (int k = 1; k <= layout.max_degree; ++k) {
    const std::size_t src = layout.offset(k - 1);
    const std::size_t dst = layout.offset(k);
    const std::size_t n = layout.count(k);
    for (std::size_t i = 0; i < n; ++i) out[dst + i] = w[src + i / P] * coeff[i % P];
  }
}

void apply_connection_omp(const WordLayout& layout, std::span<const Complex> w,
                          std::span<const Complex> coeff, std::span<Complex> out) {
  const std::size_t P = static_cast<std::size_t>(layout.pairs);
  out[0] = 0.0;
  for (int k = 1; k <= layout.max_degree; ++k) {
    const std::size_t src = layout.offset(k - 1);
    const std::size_t dst = layout.offset(k);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(layout.count(k));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      out[dst + u] = w[src + u / P] * coeff[u % P];
    }
  }
}

void apply_connection(const WordLayout& layout, std::span<const Complex> w,
                      std::span<const Complex> coeff, std::span<Complex> out) {
  if (layout.size() >= kParallelWords)
    apply_connection_omp(layout, w, coeff, out);
  else
    apply_connection_serial(layout, w, coeff, out);
}

void combine_stages_serial(std::span<const Complex> y, double h, std::span<const double> weights,
                           std::span<const ComplexVector> stages, std::span<Complex> out) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s)
      if (weights[s] != 0.0) acc += weights[s] * stages[s][i];
    out[i] = y[i] + h * acc;
  }
}

void combine_stages_omp(std::span<const Complex> y, double h, std::span<const double> weights,
                        std::span<const ComplexVector> stages, std::span<Complex> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s)
      if (weights[s] != 0.0) acc += weights[s] * stages[s][i];
    out[i] = y[i] + h * acc;
  }
}

void combine_stages(std::span<const Complex> y, double h, std::span<const double> weights,
                    std::span<const ComplexVector> stages, std::span<Complex> out) {
  if (y.size() >= kParallelWords)
    combine_stages_omp(y, h, weights, stages, out);
  else
    combine_stages_serial(y, h, weights, stages, out);
}

void eliminate_column_serial(std::span<RationalVector> rows, const RationalVector& pivot_row,
                             std::size_t col) {
  for (RationalVector& row : rows) {
    if (sgn(row[col]) == 0) continue;
    const Rational factor = row[col];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (sgn(pivot_row[j]) != 0) row[j] -= factor * pivot_row[j];
  }
}

void eliminate_column_omp(std::span<RationalVector> rows, const RationalVector& pivot_row,
                          std::size_t col) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    RationalVector& row = rows[static_cast<std::size_t>(r)];
    if (sgn(row[col]) == 0) continue;
    const Rational factor = row[col];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (sgn(pivot_row[j]) != 0) row[j] -= factor * pivot_row[j];
  }
}

void eliminate_column(std::span<RationalVector> rows, const RationalVector& pivot_row,
                      std::size_t col) {
  if (rows.size() >= kParallelRows)
    eliminate_column_omp(rows, pivot_row, col);
  else
    eliminate_column_serial(rows, pivot_row, col);
}

}  // namespace kzknot::kernels
