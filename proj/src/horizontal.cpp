#include "kzknot/horizontal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace kzknot {

StrandPair StrandPair::of(int a, int b) {
  if (a == b) throw std::invalid_argument("a chord needs two distinct strands");
  return a < b ? StrandPair{a, b} : StrandPair{b, a};
}

std::string HorizontalDiagram::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) s += ';';
    s += '{' + std::to_string(word[k].lo) + ',' + std::to_string(word[k].hi) + '}';
  }
  return s;
}

HorizontalDiagram HorizontalDiagram::parse(std::string_view text, int strands) {
  HorizontalDiagram d{strands, {}};
  std::vector<int> numbers;
  std::string digits;
  auto flush = [&] {
    if (!digits.empty()) numbers.push_back(std::stoi(digits));
    digits.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      continue;
    }
    flush();
    if (c == '}') {
      if (numbers.size() != 2) throw std::invalid_argument("each chord needs exactly two strands");
      const StrandPair p = StrandPair::of(numbers[0], numbers[1]);
      if (p.lo < 1 || p.hi > strands) throw std::invalid_argument("strand index out of range");
      d.word.push_back(p);
      numbers.clear();
    } else if (c != '{' && c != ',' && c != ';' && !std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("unexpected character in chord word");
    }
  }
  flush();
  if (!numbers.empty()) throw std::invalid_argument("unterminated chord in word");
  return d;
}

CircleDiagram close_word(const ChordWord& word, const Permutation& perm) {
  const int n = perm.size();
  const int m = static_cast<int>(word.size());
  // Endpoint of chord l on strand s gets a circle position; the circle runs up
  // strand c_0 = 1, then up c_1 = perm(c_0), and so on.
  std::vector<std::array<int, 2>> ends(m, {-1, -1});
  int next = 0;
  int strand = 1;
  for (int visited = 0; visited < n; ++visited) {
    for (int l = 0; l < m; ++l) {
      if (word[l].lo == strand) ends[l][0] = next++;
      else if (word[l].hi == strand) ends[l][1] = next++;
    }
    strand = perm(strand);
  }
  if (strand != 1 || next != 2 * m) throw std::invalid_argument("closure is not a single circle");
  std::vector<int> partner(2 * m);
  for (const auto& e : ends) {
    partner[e[0]] = e[1];
    partner[e[1]] = e[0];
  }
  return CircleDiagram::from_partners(partner);
}

std::vector<std::size_t> closure_multiplicity(const Permutation& perm, int max_degree) {
  const int n = perm.size();
  std::vector<StrandPair> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
  std::vector<std::size_t> out;
  for (int m = 0; m <= max_degree; ++m) {
    std::map<CircleDiagram, std::size_t> count;
    std::vector<std::size_t> digits(m, 0);
    const std::size_t P = pairs.size();
    if (m > 0 && P == 0) {
      out.push_back(0);
      continue;
    }
    while (true) {
      ChordWord w;
      for (std::size_t d : digits) w.push_back(pairs[d]);
      ++count[close_word(w, perm)];
      int pos = m - 1;
      while (pos >= 0 && ++digits[pos] == P) digits[pos--] = 0;
      if (pos < 0) break;
    }
    std::size_t best = 0;
    for (const auto& [d, c] : count) best = std::max(best, c);
    out.push_back(best);
  }
  return out;
}

HorizontalRelations::HorizontalRelations(int strands, int max_degree) : strands_(strands) {
  if (strands < 1 || max_degree < 0) throw std::invalid_argument("bad relation space size");
  for (int i = 1; i <= strands; ++i)
    for (int j = i + 1; j <= strands; ++j) pairs_.push_back({i, j});
  const std::size_t P = pairs_.size();
  auto index_of = [&](const StrandPair& p) {
    return static_cast<std::size_t>(std::find(pairs_.begin(), pairs_.end(), p) - pairs_.begin());
  };

  // Degree-2 generators as sparse lists of (first letter, second letter, coefficient).
  using Term = std::array<long, 3>;
  std::vector<std::vector<Term>> gens;
  auto commutator = [&](std::size_t a, std::size_t b, std::vector<Term>& out) {
    out.push_back({static_cast<long>(a), static_cast<long>(b), 1});
    out.push_back({static_cast<long>(b), static_cast<long>(a), -1});
  };
  for (std::size_t a = 0; a < P; ++a) {
    const StrandPair ij = pairs_[a];
    for (int k = 1; k <= strands; ++k) {
      if (k == ij.lo || k == ij.hi) continue;
      std::vector<Term> g;
      commutator(a, index_of(StrandPair::of(ij.lo, k)), g);
      commutator(a, index_of(StrandPair::of(ij.hi, k)), g);
      gens.push_back(std::move(g));
    }
    for (std::size_t b = a + 1; b < P; ++b) {
      const StrandPair kl = pairs_[b];
      if (kl.lo == ij.lo || kl.lo == ij.hi || kl.hi == ij.lo || kl.hi == ij.hi) continue;
      std::vector<Term> g;
      commutator(a, b, g);
      gens.push_back(std::move(g));
    }
  }

  std::size_t words = 1;
  for (int m = 0; m <= max_degree; ++m) {
    SubspaceBasis basis(words);
    if (m >= 2) {
      const std::size_t block = words / (P * P);  // prefix/suffix combinations
      for (int left = 0; left + 2 <= m; ++left) {
        std::size_t pre_count = 1;
        for (int i = 0; i < left; ++i) pre_count *= P;
        const std::size_t suf_count = block / pre_count;
        const std::size_t shift = suf_count;
        for (std::size_t pre = 0; pre < pre_count; ++pre)
          for (std::size_t suf = 0; suf < suf_count; ++suf)
            for (const auto& g : gens) {
              RationalVector v(words);
              for (const Term& t : g) {
                const std::size_t idx = ((pre * P + static_cast<std::size_t>(t[0])) * P +
                                         static_cast<std::size_t>(t[1])) * shift + suf;
                v[idx] += t[2];
              }
              basis.insert(std::move(v));
            }
      }
    }
    degrees_.push_back(std::move(basis));
    words *= P;
  }
}

std::size_t HorizontalRelations::word_index(const ChordWord& w) const {
  std::size_t idx = 0;
  for (const StrandPair& p : w) {
    const auto it = std::find(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end()) throw std::invalid_argument("strand pair out of range");
    idx = idx * pairs_.size() + static_cast<std::size_t>(it - pairs_.begin());
  }
  return idx;
}

RelationResidual residual_modulo(const BraidElement<Complex>& e, const std::vector<double>& error,
                                 const HorizontalRelations& rel) {
  if (e.strands() != rel.strands()) throw std::invalid_argument("strand count mismatch");
  if (e.max_degree() > rel.max_degree()) throw std::invalid_argument("relations truncated too low");
  RelationResidual out;
  for (int m = 0; m <= e.max_degree(); ++m) {
    const SubspaceBasis& s = rel.degree(m);
    ComplexVector v(s.ambient_dim());
    for (const auto& [w, c] : e.terms())
      if (static_cast<int>(w.size()) == m) v[rel.word_index(w)] += c;
    const FloatReduction r = reduce_mod(std::move(v), s);
    double worst = 0.0;
    for (const Complex& c : r.value) worst = std::max(worst, std::abs(c));
    out.residual.push_back(worst);
    const double em = m < static_cast<int>(error.size()) ? error[m] : 0.0;
    out.bound.push_back(em * r.amplification);
  }
  return out;
}

}  // namespace kzknot
