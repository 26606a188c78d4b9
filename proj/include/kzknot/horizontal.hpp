#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kzknot/braid.hpp"
#include "kzknot/chord.hpp"
#include "kzknot/linalg.hpp"

namespace kzknot {

// Unordered pair of strands {lo, hi}, 1-based, lo < hi. Strands are labelled
// by their bottom position.
struct StrandPair {
  int lo = 1;
  int hi = 2;

  static StrandPair of(int a, int b);
  friend auto operator<=>(const StrandPair&, const StrandPair&) = default;
  friend bool operator==(const StrandPair&, const StrandPair&) = default;
};

using ChordWord = std::vector<StrandPair>;

// A chord diagram over a braid: one horizontal chord per height, listed
// bottom-to-top.
struct HorizontalDiagram {
  int strands = 1;
  ChordWord word;

  int degree() const { return static_cast<int>(word.size()); }
  // "{1,2};{2,3}"; the empty word renders as "".
  std::string to_string() const;
  static HorizontalDiagram parse(std::string_view text, int strands);

  friend bool operator==(const HorizontalDiagram&, const HorizontalDiagram&) = default;
};

// Truncated linear combination of horizontal diagrams over a braid. The
// element remembers the permutation of the braid it lives on so that stacking
// can relabel the upper factor's strands.
template <class Scalar>
class BraidElement {
 public:
  BraidElement(int strands, int max_degree, Permutation perm)
      : strands_(strands), max_degree_(max_degree), perm_(std::move(perm)) {
    if (perm_.size() != strands_) throw std::invalid_argument("permutation size mismatch");
  }
  BraidElement(int strands, int max_degree)
      : BraidElement(strands, max_degree, Permutation::identity(strands)) {}

  static BraidElement unit(int strands, int max_degree, Permutation perm) {
    BraidElement e(strands, max_degree, std::move(perm));
    e.add({}, Scalar(1));
    return e;
  }
  static BraidElement unit(int strands, int max_degree) {
    return unit(strands, max_degree, Permutation::identity(strands));
  }

  int strands() const { return strands_; }
  int max_degree() const { return max_degree_; }
  const Permutation& permutation() const { return perm_; }
  const std::map<ChordWord, Scalar>& terms() const { return terms_; }

  Scalar coefficient(const ChordWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(const ChordWord& w, const Scalar& c) {
    if (static_cast<int>(w.size()) > max_degree_ || detail::is_zero_scalar(c)) return;
    for (const StrandPair& p : w)
      if (p.lo < 1 || p.hi > strands_ || p.lo >= p.hi)
        throw std::invalid_argument("strand pair out of range");
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  BraidElement truncated(int n) const {
    BraidElement e(strands_, n, perm_);
    for (const auto& [w, c] : terms_) e.add(w, c);
    return e;
  }

  friend bool operator==(const BraidElement&, const BraidElement&) = default;

 private:
  int strands_;
  int max_degree_;
  Permutation perm_;
  std::map<ChordWord, Scalar> terms_;
};

// Chords of `upper` are relabelled from upper's bottom positions to the
// strands of `lower` ending there, then words are concatenated (lower first).
// Truncated at the smaller degree.
template <class Scalar>
BraidElement<Scalar> stack(const BraidElement<Scalar>& lower, const BraidElement<Scalar>& upper) {
  if (lower.strands() != upper.strands())
    throw std::invalid_argument("cannot stack elements over different strand counts");
  const Permutation top = lower.permutation().inverse();  // top position -> strand
  const int n = std::min(lower.max_degree(), upper.max_degree());
  BraidElement<Scalar> out(lower.strands(), n, lower.permutation().then(upper.permutation()));
  for (const auto& [wl, cl] : lower.terms()) {
    for (const auto& [wu, cu] : upper.terms()) {
      if (static_cast<int>(wl.size() + wu.size()) > n) continue;
      ChordWord w = wl;
      for (const StrandPair& p : wu) w.push_back(StrandPair::of(top(p.lo), top(p.hi)));
      out.add(w, cl * cu);
    }
  }
  return out;
}

// Closure of a single word over a knot-closing braid with permutation `perm`.
CircleDiagram close_word(const ChordWord& word, const Permutation& perm);

// The map p onto circle diagrams; requires the closure of b to be a knot.
template <class Scalar>
CircleElement<Scalar> close(const BraidElement<Scalar>& e, const BraidWord& b) {
  if (e.strands() != b.strands())
    throw std::invalid_argument("element and braid have different strand counts");
  const Permutation perm = permutation(b);
  if (perm.cycle_count() != 1)
    throw std::invalid_argument("closure has " + std::to_string(perm.cycle_count()) +
                                " components; expected a knot");
  if (!(perm == e.permutation()))
    throw std::invalid_argument("element does not live over this braid");
  CircleElement<Scalar> out(e.max_degree());
  for (const auto& [w, c] : e.terms()) out.add(close_word(w, perm), c);
  return out;
}

template <class Scalar>
bool trace_swap_check(const BraidElement<Scalar>& e1, const BraidElement<Scalar>& e2,
                      const BraidWord& b1, const BraidWord& b2) {
  return close(stack(e1, e2), concat(b1, b2)) == close(stack(e2, e1), concat(b2, b1));
}

// Infinitesimal pure braid relations [H_ij, H_ik + H_jk] = 0 and
// [H_ij, H_kl] = 0 ({i,j,k,l} distinct), closed under left and right
// multiplication, per degree of the truncated word algebra. Words of degree m
// are indexed in base P (P = number of strand pairs), bottom letter most
// significant. Used to compare transports of homotopic braids, which agree
// only modulo these relations.
class HorizontalRelations {
 public:
  HorizontalRelations(int strands, int max_degree);

  int strands() const { return strands_; }
  int max_degree() const { return static_cast<int>(degrees_.size()) - 1; }
  const std::vector<StrandPair>& pairs() const { return pairs_; }
  const SubspaceBasis& degree(int m) const { return degrees_.at(static_cast<std::size_t>(m)); }
  std::size_t word_index(const ChordWord& w) const;

 private:
  int strands_;
  std::vector<StrandPair> pairs_;
  std::vector<SubspaceBasis> degrees_;
};

struct RelationResidual {
  std::vector<double> residual;  // per degree, max |coefficient| after reduction
  std::vector<double> bound;     // per degree, input error pushed through the reduction
};

// Reduces `e` modulo the relations; `error[m]` bounds each degree-m input
// coefficient.
RelationResidual residual_modulo(const BraidElement<Complex>& e, const std::vector<double>& error,
                                 const HorizontalRelations& rel);

// Largest number of degree-m words over `strands` strands that close to the
// same circle diagram, for m = 0..max_degree.
std::vector<std::size_t> closure_multiplicity(const Permutation& perm, int max_degree);

}  // namespace kzknot
