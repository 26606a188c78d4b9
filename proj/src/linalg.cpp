#include "kzknot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kzknot/kernels.hpp"

namespace kzknot {

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows,
                                         std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool SubspaceBasis::is_pivot(std::size_t col) const {
  return std::binary_search(pivots_.begin(), pivots_.end(), col);
}

std::vector<std::size_t> SubspaceBasis::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ambient_; ++c)
    if (!is_pivot(c)) out.push_back(c);
  return out;
}

bool SubspaceBasis::insert(RationalVector v) {
  v = reduce_mod(std::move(v), *this);
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
  if (it == v.end()) return false;
  const std::size_t col = static_cast<std::size_t>(it - v.begin());
  const Rational lead = *it;
  for (Rational& x : v)
    if (sgn(x) != 0) x /= lead;
  kernels::eliminate_column(rows_, v, col);
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), col);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, col);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

std::vector<double> SubspaceBasis::column_weights() const {
  std::vector<double> w(ambient_, 0.0);
  for (const RationalVector& row : rows_)
    for (std::size_t c = 0; c < ambient_; ++c)
      if (sgn(row[c]) != 0 && !is_pivot(c)) w[c] += std::abs(row[c].get_d());
  return w;
}

SubspaceBasis row_reduce(const RationalMatrix& m) {
  SubspaceBasis basis(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return basis;
}

RationalVector reduce_mod(RationalVector v, const SubspaceBasis& s) {
  if (v.size() != s.ambient_dim())
    throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                " does not match ambient dimension " +
                                std::to_string(s.ambient_dim()));
  for (Rational& x : v) x.canonicalize();
  for (std::size_t r = 0; r < s.rank(); ++r) {
    const std::size_t p = s.pivots()[r];
    if (sgn(v[p]) == 0) continue;
    const Rational factor = v[p];
    const RationalVector& row = s.rows()[r];
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(row[j]) != 0) v[j] -= factor * row[j];
  }
  return v;
}

FloatReduction reduce_mod(ComplexVector v, const SubspaceBasis& s) {
  if (v.size() != s.ambient_dim())
    throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                " does not match ambient dimension " +
                                std::to_string(s.ambient_dim()));
  for (std::size_t r = 0; r < s.rank(); ++r) {
    const std::size_t p = s.pivots()[r];
    const Complex factor = v[p];
    if (factor == Complex(0.0)) continue;
    const RationalVector& row = s.rows()[r];
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(row[j]) != 0) v[j] -= factor * row[j].get_d();
    v[p] = 0.0;
  }
  FloatReduction out;
  const std::vector<double> w = s.column_weights();
  double worst = 0.0;
  for (double x : w) worst = std::max(worst, x);
  out.amplification = 1.0 + worst;
  out.value = std::move(v);
  return out;
}

bool in_span(const RationalVector& v, const SubspaceBasis& s) { return is_zero(reduce_mod(v, s)); }

}  // namespace kzknot
