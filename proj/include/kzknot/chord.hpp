#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kzknot/linalg.hpp"

namespace kzknot {

// A chord diagram on the oriented circle, up to rotation.
//
// The 2m endpoints are numbered 0..2m-1 in cyclic order. A matching is encoded
// by the offset sequence code[i] = (partner(i) - i) mod 2m, and the stored
// representative is the rotation with the lexicographically smallest code.
// Reflections are not identified. Ordering is by chord count, then code; the
// diagram with all chords diametrically opposite (code m, m, ..., m) is the
// last diagram of its degree.
class CircleDiagram {
 public:
  CircleDiagram() = default;  // the chordless circle

  // `partner` is an involution without fixed points on {0, ..., 2m-1}.
  static CircleDiagram from_partners(const std::vector<int>& partner);
  // 1-based chord list, e.g. {{1,4},{2,5},{3,6}}.
  static CircleDiagram from_chords(const std::vector<std::pair<int, int>>& chords);
  // Parses "[(1,4),(2,5),(3,6)]"; "[]" is the empty diagram.
  static CircleDiagram parse(std::string_view text);
  // m chords joining point i to point i+m.
  static CircleDiagram opposite(int m);

  int chord_count() const { return m_; }
  const std::vector<int>& code() const { return code_; }
  std::vector<int> partners() const;
  // 1-based chords of the canonical representative, sorted by first endpoint.
  std::vector<std::pair<int, int>> chords() const;
  std::string to_string() const;

  friend auto operator<=>(const CircleDiagram&, const CircleDiagram&) = default;
  friend bool operator==(const CircleDiagram&, const CircleDiagram&) = default;

 private:
  int m_ = 0;
  std::vector<int> code_;
};

// Relabels point i as (i + shift) mod 2m.
std::vector<int> rotate_matching(const std::vector<int>& partner, int shift);
CircleDiagram canonical_form(const std::vector<int>& partner);

// All canonical m-chord diagrams in increasing order.
std::vector<CircleDiagram> enumerate_diagrams(int m);

// Connected sum, cutting each circle in the arc just before its point 0.
CircleDiagram connected_sum(const CircleDiagram& a, const CircleDiagram& b);
// Same, but cutting `a` just before point `cut_a` and `b` before `cut_b` of
// their canonical representatives. Only the 4T class is cut-independent.
CircleDiagram connected_sum_at(const CircleDiagram& a, int cut_a, const CircleDiagram& b, int cut_b);

namespace detail {
inline bool is_zero_scalar(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero_scalar(const Complex& x) { return x == Complex(0.0); }
}  // namespace detail

// Finite linear combination of circle diagrams, truncated at `max_degree`
// chords. Terms above the truncation are dropped on insertion.
template <class Scalar>
class CircleElement {
 public:
  explicit CircleElement(int max_degree = 0) : max_degree_(max_degree) {}

  static CircleElement unit(int max_degree) {
    CircleElement e(max_degree);
    e.add(CircleDiagram(), Scalar(1));
    return e;
  }
  static CircleElement single(const CircleDiagram& d, int max_degree) {
    CircleElement e(max_degree);
    e.add(d, Scalar(1));
    return e;
  }

  int max_degree() const { return max_degree_; }
  const std::map<CircleDiagram, Scalar>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Scalar coefficient(const CircleDiagram& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(const CircleDiagram& d, const Scalar& c) {
    if (d.chord_count() > max_degree_ || detail::is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  CircleElement& operator+=(const CircleElement& o) {
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
  }
  CircleElement& operator-=(const CircleElement& o) {
    for (const auto& [d, c] : o.terms_) add(d, -c);
    return *this;
  }
  CircleElement& operator*=(const Scalar& s) {
    if (detail::is_zero_scalar(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [d, c] : terms_) c *= s;
    return *this;
  }
  friend CircleElement operator+(CircleElement a, const CircleElement& b) { return a += b; }
  friend CircleElement operator-(CircleElement a, const CircleElement& b) { return a -= b; }
  friend CircleElement operator*(const Scalar& s, CircleElement a) { return a *= s; }

  CircleElement truncated(int n) const {
    CircleElement e(n);
    for (const auto& [d, c] : terms_) e.add(d, c);
    return e;
  }

  friend bool operator==(const CircleElement&, const CircleElement&) = default;

 private:
  int max_degree_;
  std::map<CircleDiagram, Scalar> terms_;
};

// Bilinear connected sum, truncated at the smaller of the two degrees.
template <class Scalar>
CircleElement<Scalar> product(const CircleElement<Scalar>& a, const CircleElement<Scalar>& b) {
  const int n = std::min(a.max_degree(), b.max_degree());
  CircleElement<Scalar> out(n);
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms())
      if (da.chord_count() + db.chord_count() <= n) out.add(connected_sum(da, db), ca * cb);
  return out;
}

// r_sign = sum_{m=1..N} (sign/2)^m / m! * O_m
CircleElement<Rational> r_plus_minus(int sign, int max_degree);

// Ordering of the four diagrams of a 4T relation: the moving endpoint sits
// immediately before u1, after u1, before u2, after u2.
enum class FourTermSigns {
  kPlusMinusPlusMinus,   // (+, -, +, -)
  kPlusMinusMinusPlus,   // (+, -, -, +)
};

// 4T relation vectors over enumerate_diagrams(m), duplicates removed.
std::vector<RationalVector> generate_4t(int m, FourTermSigns signs = FourTermSigns::kPlusMinusPlusMinus);

// Per-degree chord diagram spaces modulo 4T, up to a truncation degree.
class GradedBasis {
 public:
  struct Degree {
    std::vector<CircleDiagram> diagrams;
    std::map<CircleDiagram, std::size_t> index;
    std::size_t relation_count = 0;
    SubspaceBasis relations;
    std::vector<std::size_t> free;  // diagram indices serving as coordinates on A_m
  };

  explicit GradedBasis(int max_degree, FourTermSigns signs = FourTermSigns::kPlusMinusPlusMinus);

  int max_degree() const { return static_cast<int>(degrees_.size()) - 1; }
  const Degree& degree(int m) const { return degrees_.at(static_cast<std::size_t>(m)); }
  std::size_t diagram_count(int m) const { return degree(m).diagrams.size(); }
  std::size_t relation_rank(int m) const { return degree(m).relations.rank(); }
  std::size_t dim(int m) const { return degree(m).free.size(); }
  std::vector<std::size_t> dims() const;
  // Coordinates of `diagram_coords` (over enumerate_diagrams(m)) in A_m.
  RationalVector reduce(int m, const RationalVector& diagram_coords) const;
  // Degree-m diagram coordinates of an element.
  RationalVector diagram_vector(int m, const CircleElement<Rational>& e) const;
  ComplexVector diagram_vector(int m, const CircleElement<Complex>& e) const;
  // Sum of A_m coordinates for m = 0..N, degree ascending.
  RationalVector quotient_vector(const CircleElement<Rational>& e) const;
  std::size_t total_dim() const;
  // Start of degree m inside quotient_vector.
  std::size_t offset(int m) const { return offsets_.at(static_cast<std::size_t>(m)); }

 private:
  std::vector<Degree> degrees_;
  std::vector<std::size_t> offsets_;
};

GradedBasis build_graded_basis(int max_degree);

// Truncated ideal generated by a list of elements, as a subspace of the
// concatenated A_0 + ... + A_N coordinates. The ideal is spanned by
// trunc_N(g * D) for generators g and diagrams D. It is filtered, not
// graded; reduction eliminates lower degrees first so the surviving
// coordinates are the lowest-degree normal form.
class IdealBasis {
 public:
  IdealBasis(const GradedBasis& gb, std::span<const CircleElement<Rational>> generators);

  int max_degree() const { return max_degree_; }
  const SubspaceBasis& space() const { return space_; }
  // Positions in the concatenated coordinates that survive in degree m.
  const std::vector<std::size_t>& free_in_degree(int m) const {
    return free_.at(static_cast<std::size_t>(m));
  }
  std::size_t quotient_dim(int m) const { return free_in_degree(m).size(); }
  // Diagrams labelling the surviving coordinates of degree m.
  std::vector<CircleDiagram> quotient_basis(int m, const GradedBasis& gb) const;
  // Restriction of the ideal to degrees <= n, as a subspace of the degree <= n
  // concatenated coordinates.
  SubspaceBasis truncated_space(const GradedBasis& gb, int n) const;

 private:
  int max_degree_;
  SubspaceBasis space_;
  std::vector<std::vector<std::size_t>> free_;
};

IdealBasis build_ideal(const GradedBasis& gb);

template <class Scalar>
struct Projection {
  std::vector<std::vector<Scalar>> coords;  // per degree, over quotient_basis(m)
  std::vector<double> error;                // per degree; zero for exact input
};

// The canonical projection to the quotient by 4T and the ideal.
Projection<Rational> project_k(const CircleElement<Rational>& e, const GradedBasis& gb,
                               const IdealBasis& ib);
// `input_error[m]` bounds the error of every degree-m diagram coefficient.
Projection<Complex> project_k(const CircleElement<Complex>& e, const GradedBasis& gb,
                              const IdealBasis& ib, const std::vector<double>& input_error = {});

}  // namespace kzknot
