#include "kzknot/chord.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace kzknot {

namespace {

void validate_matching(const std::vector<int>& partner) {
  const int n = static_cast<int>(partner.size());
  if (n % 2 != 0) throw std::invalid_argument("a chord diagram needs an even number of points");
  for (int i = 0; i < n; ++i) {
    const int p = partner[i];
    if (p < 0 || p >= n || p == i || partner[p] != i)
      throw std::invalid_argument("malformed pairing at point " + std::to_string(i + 1));
  }
}

void all_matchings(std::vector<int>& partner, std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(partner.size());
  int first = 0;
  while (first < n && partner[first] >= 0) ++first;
  if (first == n) {
    out.push_back(partner);
    return;
  }
  for (int j = first + 1; j < n; ++j) {
    if (partner[j] >= 0) continue;
    partner[first] = j;
    partner[j] = first;
    all_matchings(partner, out);
    partner[first] = -1;
    partner[j] = -1;
  }
}

}  // namespace

std::vector<int> rotate_matching(const std::vector<int>& partner, int shift) {
  const int n = static_cast<int>(partner.size());
  if (n == 0) return {};
  shift = ((shift % n) + n) % n;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[(i + shift) % n] = (partner[i] + shift) % n;
  return out;
}

CircleDiagram canonical_form(const std::vector<int>& partner) {
  return CircleDiagram::from_partners(partner);
}

CircleDiagram CircleDiagram::from_partners(const std::vector<int>& partner) {
  validate_matching(partner);
  const int n = static_cast<int>(partner.size());
  CircleDiagram d;
  d.m_ = n / 2;
  if (n == 0) return d;
  std::vector<int> offsets(n);
  for (int i = 0; i < n; ++i) offsets[i] = ((partner[i] - i) % n + n) % n;
  // The code of the rotation starting at point s is offsets[s], offsets[s+1], ...
  int best = 0;
  for (int s = 1; s < n; ++s) {
    for (int k = 0; k < n; ++k) {
      const int a = offsets[(s + k) % n];
      const int b = offsets[(best + k) % n];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  d.code_.resize(n);
  for (int k = 0; k < n; ++k) d.code_[k] = offsets[(best + k) % n];
  return d;
}

CircleDiagram CircleDiagram::from_chords(const std::vector<std::pair<int, int>>& chords) {
  const int n = 2 * static_cast<int>(chords.size());
  std::vector<int> partner(n, -1);
  for (const auto& [a, b] : chords) {
    if (a < 1 || b < 1 || a > n || b > n || a == b)
      throw std::invalid_argument("chord (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") out of range");
    if (partner[a - 1] >= 0 || partner[b - 1] >= 0)
      throw std::invalid_argument("point used by two chords");
    partner[a - 1] = b - 1;
    partner[b - 1] = a - 1;
  }
  return from_partners(partner);
}

CircleDiagram CircleDiagram::parse(std::string_view text) {
  std::vector<std::pair<int, int>> chords;
  std::vector<int> numbers;
  std::string digits;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      continue;
    }
    if (!digits.empty()) {
      numbers.push_back(std::stoi(digits));
      digits.clear();
    }
    if (c != '[' && c != ']' && c != '(' && c != ')' && c != ',' &&
        !std::isspace(static_cast<unsigned char>(c)))
      throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                  "' in chord list");
  }
  if (!digits.empty()) numbers.push_back(std::stoi(digits));
  if (numbers.size() % 2 != 0) throw std::invalid_argument("chord list has an odd number of endpoints");
  for (std::size_t i = 0; i < numbers.size(); i += 2) chords.emplace_back(numbers[i], numbers[i + 1]);
  return from_chords(chords);
}

CircleDiagram CircleDiagram::opposite(int m) {
  if (m < 0) throw std::invalid_argument("negative chord count");
  std::vector<int> partner(2 * m);
  for (int i = 0; i < 2 * m; ++i) partner[i] = (i + m) % (2 * m);
  return from_partners(partner);
}

std::vector<int> CircleDiagram::partners() const {
  const int n = 2 * m_;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + code_[i]) % n;
  return p;
}

std::vector<std::pair<int, int>> CircleDiagram::chords() const {
  std::vector<std::pair<int, int>> out;
  const std::vector<int> p = partners();
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] > i) out.emplace_back(i + 1, p[i] + 1);
  return out;
}

std::string CircleDiagram::to_string() const {
  std::string s = "[";
  bool first = true;
  for (const auto& [a, b] : chords()) {
    if (!first) s += ',';
    first = false;
    s += '(' + std::to_string(a) + ',' + std::to_string(b) + ')';
  }
  return s + ']';
}

std::vector<CircleDiagram> enumerate_diagrams(int m) {
  if (m < 0) throw std::invalid_argument("negative chord count");
  std::vector<int> partner(2 * m, -1);
  std::vector<std::vector<int>> matchings;
  all_matchings(partner, matchings);
  std::set<CircleDiagram> seen;
  for (const auto& p : matchings) seen.insert(CircleDiagram::from_partners(p));
  return {seen.begin(), seen.end()};
}

CircleDiagram connected_sum_at(const CircleDiagram& a, int cut_a, const CircleDiagram& b,
                               int cut_b) {
  const std::vector<int> pa = rotate_matching(a.partners(), -cut_a);
  const std::vector<int> pb = rotate_matching(b.partners(), -cut_b);
  const int na = static_cast<int>(pa.size());
  std::vector<int> joined(pa);
  for (int q : pb) joined.push_back(q + na);
  return CircleDiagram::from_partners(joined);
}

CircleDiagram connected_sum(const CircleDiagram& a, const CircleDiagram& b) {
  return connected_sum_at(a, 0, b, 0);
}

CircleElement<Rational> r_plus_minus(int sign, int max_degree) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  CircleElement<Rational> r(max_degree);
  Rational term(1);
  for (int m = 1; m <= max_degree; ++m) {
    term *= Rational(sign, 2 * m);
    r.add(CircleDiagram::opposite(m), term);
  }
  return r;
}

std::vector<RationalVector> generate_4t(int m, FourTermSigns signs) {
  if (m < 2) return {};
  const std::vector<CircleDiagram> diagrams = enumerate_diagrams(m);
  std::map<CircleDiagram, std::size_t> index;
  for (std::size_t i = 0; i < diagrams.size(); ++i) index[diagrams[i]] = i;

  const int slot_sign[2][4] = {{1, -1, 1, -1}, {1, -1, -1, 1}};
  const int* sign = slot_sign[signs == FourTermSigns::kPlusMinusPlusMinus ? 0 : 1];

  std::set<RationalVector> seen;
  std::vector<RationalVector> out;
  constexpr int kMoving = -1;
  for (const CircleDiagram& core : enumerate_diagrams(m - 1)) {
    const std::vector<int> partner = core.partners();
    const int n = static_cast<int>(partner.size());
    for (int u1 = 0; u1 < n; ++u1) {
      const int u2 = partner[u1];
      if (u2 < u1) continue;
      for (int gap = 0; gap < n; ++gap) {
        RationalVector rel(diagrams.size());
        for (int slot = 0; slot < 4; ++slot) {
          const int target = slot < 2 ? u1 : u2;
          const bool before = slot % 2 == 0;
          // Chord labels: old chords by their smaller endpoint, new chord kMoving.
          std::vector<int> seq;
          seq.reserve(n + 2);
          for (int i = 0; i < n; ++i) {
            if (i == target && before) seq.push_back(kMoving);
            seq.push_back(std::min(i, partner[i]));
            if (i == target && !before) seq.push_back(kMoving);
            if (i == gap) seq.push_back(kMoving);
          }
          std::map<int, std::vector<int>> where;
          for (int pos = 0; pos < static_cast<int>(seq.size()); ++pos) where[seq[pos]].push_back(pos);
          std::vector<int> joined(seq.size());
          for (const auto& [label, pos] : where) {
            joined[pos[0]] = pos[1];
            joined[pos[1]] = pos[0];
          }
          rel[index.at(CircleDiagram::from_partners(joined))] += sign[slot];
        }
        if (is_zero(rel) || !seen.insert(rel).second) continue;
        out.push_back(std::move(rel));
      }
    }
  }
  return out;
}

GradedBasis::GradedBasis(int max_degree, FourTermSigns signs) {
  if (max_degree < 0) throw std::invalid_argument("negative truncation degree");
  std::size_t offset = 0;
  for (int m = 0; m <= max_degree; ++m) {
    Degree d;
    d.diagrams = enumerate_diagrams(m);
    for (std::size_t i = 0; i < d.diagrams.size(); ++i) d.index[d.diagrams[i]] = i;
    d.relations = SubspaceBasis(d.diagrams.size());
    const std::vector<RationalVector> rels = generate_4t(m, signs);
    d.relation_count = rels.size();
    for (const RationalVector& r : rels) d.relations.insert(r);
    d.free = d.relations.free_columns();
    offsets_.push_back(offset);
    offset += d.free.size();
    degrees_.push_back(std::move(d));
  }
  offsets_.push_back(offset);
}

std::vector<std::size_t> GradedBasis::dims() const {
  std::vector<std::size_t> out;
  for (int m = 0; m <= max_degree(); ++m) out.push_back(dim(m));
  return out;
}

std::size_t GradedBasis::total_dim() const { return offsets_.back(); }

RationalVector GradedBasis::reduce(int m, const RationalVector& diagram_coords) const {
  const Degree& d = degree(m);
  const RationalVector r = reduce_mod(diagram_coords, d.relations);
  RationalVector out;
  out.reserve(d.free.size());
  for (std::size_t j : d.free) out.push_back(r[j]);
  return out;
}

RationalVector GradedBasis::diagram_vector(int m, const CircleElement<Rational>& e) const {
  const Degree& d = degree(m);
  RationalVector v(d.diagrams.size());
  for (const auto& [diag, c] : e.terms())
    if (diag.chord_count() == m) v[d.index.at(diag)] += c;
  return v;
}

ComplexVector GradedBasis::diagram_vector(int m, const CircleElement<Complex>& e) const {
  const Degree& d = degree(m);
  ComplexVector v(d.diagrams.size());
  for (const auto& [diag, c] : e.terms())
    if (diag.chord_count() == m) v[d.index.at(diag)] += c;
  return v;
}

RationalVector GradedBasis::quotient_vector(const CircleElement<Rational>& e) const {
  RationalVector out;
  out.reserve(total_dim());
  for (int m = 0; m <= max_degree(); ++m) {
    const RationalVector r = reduce(m, diagram_vector(m, e));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

GradedBasis build_graded_basis(int max_degree) { return GradedBasis(max_degree); }

IdealBasis::IdealBasis(const GradedBasis& gb, std::span<const CircleElement<Rational>> generators)
    : max_degree_(gb.max_degree()), space_(gb.total_dim()) {
  for (const CircleElement<Rational>& g : generators) {
    const CircleElement<Rational> gt = g.truncated(max_degree_);
    if (gt.empty()) continue;
    int lowest = max_degree_;
    for (const auto& [d, c] : gt.terms()) lowest = std::min(lowest, d.chord_count());
    for (int m = 0; m + lowest <= max_degree_; ++m)
      for (const CircleDiagram& d : gb.degree(m).diagrams)
        space_.insert(gb.quotient_vector(product(gt, CircleElement<Rational>::single(d, max_degree_))));
  }
  free_.resize(static_cast<std::size_t>(max_degree_) + 1);
  for (std::size_t col : space_.free_columns()) {
    int m = 0;
    while (col >= gb.offset(m + 1)) ++m;
    free_[static_cast<std::size_t>(m)].push_back(col);
  }
}

std::vector<CircleDiagram> IdealBasis::quotient_basis(int m, const GradedBasis& gb) const {
  std::vector<CircleDiagram> out;
  const GradedBasis::Degree& d = gb.degree(m);
  for (std::size_t col : free_in_degree(m)) out.push_back(d.diagrams[d.free[col - gb.offset(m)]]);
  return out;
}

SubspaceBasis IdealBasis::truncated_space(const GradedBasis& gb, int n) const {
  const std::size_t cut = gb.offset(n + 1);
  SubspaceBasis out(cut);
  for (const RationalVector& row : space_.rows())
    out.insert(RationalVector(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(cut)));
  return out;
}

IdealBasis build_ideal(const GradedBasis& gb) {
  const int n = gb.max_degree();
  if (n < 1) return IdealBasis(gb, {});
  const std::vector<CircleElement<Rational>> gens = {r_plus_minus(1, n), r_plus_minus(-1, n)};
  return IdealBasis(gb, gens);
}

namespace {

void check_degree(int element_degree_used, const GradedBasis& gb) {
  if (element_degree_used > gb.max_degree())
    throw std::out_of_range("element has terms of degree " + std::to_string(element_degree_used) +
                            " beyond the basis truncation " + std::to_string(gb.max_degree()));
}

template <class Scalar>
int top_degree(const CircleElement<Scalar>& e) {
  int top = 0;
  for (const auto& [d, c] : e.terms()) top = std::max(top, d.chord_count());
  return top;
}

}  // namespace

Projection<Rational> project_k(const CircleElement<Rational>& e, const GradedBasis& gb,
                               const IdealBasis& ib) {
  check_degree(top_degree(e), gb);
  const RationalVector reduced = reduce_mod(gb.quotient_vector(e), ib.space());
  Projection<Rational> out;
  for (int m = 0; m <= gb.max_degree(); ++m) {
    std::vector<Rational> c;
    for (std::size_t col : ib.free_in_degree(m)) c.push_back(reduced[col]);
    out.coords.push_back(std::move(c));
    out.error.push_back(0.0);
  }
  return out;
}

Projection<Complex> project_k(const CircleElement<Complex>& e, const GradedBasis& gb,
                              const IdealBasis& ib, const std::vector<double>& input_error) {
  check_degree(top_degree(e), gb);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const int N = gb.max_degree();
  ComplexVector total;
  std::vector<double> err;  // per concatenated coordinate
  double scale = 0.0;
  for (const auto& [d, c] : e.terms()) scale = std::max(scale, std::abs(c));

  for (int m = 0; m <= N; ++m) {
    const GradedBasis::Degree& deg = gb.degree(m);
    const double em = m < static_cast<int>(input_error.size()) ? input_error[m] : 0.0;
    const FloatReduction r = reduce_mod(gb.diagram_vector(m, e), deg.relations);
    const std::vector<double> w = deg.relations.column_weights();
    for (std::size_t j : deg.free) {
      total.push_back(r.value[j]);
      err.push_back((em + 4 * eps * scale) * (1.0 + w[j]));
    }
  }
  double total_scale = 0.0;
  for (const Complex& c : total) total_scale = std::max(total_scale, std::abs(c));

  const SubspaceBasis& space = ib.space();
  const FloatReduction reduced = reduce_mod(total, space);
  Projection<Complex> out;
  for (int m = 0; m <= N; ++m) {
    std::vector<Complex> c;
    double bound = 0.0;
    for (std::size_t col : ib.free_in_degree(m)) {
      c.push_back(reduced.value[col]);
      double b = err[col];
      double weight = 1.0;
      for (std::size_t r = 0; r < space.rank(); ++r) {
        const Rational& entry = space.rows()[r][col];
        if (sgn(entry) == 0) continue;
        const double a = std::abs(entry.get_d());
        b += a * err[space.pivots()[r]];
        weight += a;
      }
      b += 4 * eps * weight * total_scale;
      bound = std::max(bound, b);
    }
    out.coords.push_back(std::move(c));
    out.error.push_back(bound);
  }
  return out;
}

}  // namespace kzknot
