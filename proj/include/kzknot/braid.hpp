#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kzknot {

// One elementary generator sigma_index^sign. Indices are 1-based.
struct Letter {
  int index = 1;
  int sign = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A braid word on `strands` strands; letters are listed bottom-to-top.
class BraidWord {
 public:
  BraidWord() = default;
  BraidWord(int strands, std::vector<Letter> letters);

  static BraidWord trivial(int strands) { return BraidWord(strands, {}); }

  int strands() const { return strands_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  // Whitespace-separated signed integers, e.g. "1 -2 1".
  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_ = 1;
  std::vector<Letter> letters_;
};

class BraidParseError : public std::invalid_argument {
 public:
  enum class Kind { kBadStrandCount, kNotAnInteger, kZeroToken, kIndexOutOfRange };

  BraidParseError(Kind kind, std::size_t token, const std::string& what)
      : std::invalid_argument(what), kind_(kind), token_(token) {}

  Kind kind() const { return kind_; }
  // 1-based position of the offending token (0 for strand-count errors).
  std::size_t token() const { return token_; }

 private:
  Kind kind_;
  std::size_t token_;
};

BraidWord parse_braid(std::string_view text, int strands);

// images[i-1] is the top position reached by the strand starting at bottom
// position i.
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int n);

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[i - 1]; }
  Permutation inverse() const;
  // Apply *this first, then `next`.
  Permutation then(const Permutation& next) const;
  bool is_identity() const;
  int cycle_count() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

Permutation permutation(const BraidWord& b);
int closure_components(const BraidWord& b);

BraidWord concat(const BraidWord& lower, const BraidWord& upper);
BraidWord inverse(const BraidWord& b);
// (b ⊔ |) sigma_n^{sign}
BraidWord stabilize(const BraidWord& b, int sign);

// Natural endpoints 1, 2, ..., n.
std::vector<double> natural_endpoints(int n);

// Piecewise-smooth realization of a braid word as n moving points in C.
//
// Letter k occupies t in [k/L, (k+1)/L]. In a crossing slice the two strands
// at real positions i and i+1 move on an ellipse centred at their midpoint so
// that their relative vector z_right - z_left turns by pi (anticlockwise for
// sign +1). `aspect` = 1 gives the half-circle; other values deform the path
// without changing its homotopy class.
class BraidGeometry {
 public:
  struct Slice {
    int position = 0;          // 0-based left real position of the crossing
    int sign = 1;
    int left_strand = 0;       // strand identities (0-based bottom index)
    int right_strand = 0;
    std::vector<int> strand_at;  // position -> strand at slice start
  };

  struct State {
    std::vector<std::complex<double>> z;   // indexed by strand identity
    std::vector<std::complex<double>> dz;  // derivative w.r.t. local time
  };

  BraidGeometry(const BraidWord& b, std::vector<double> endpoints, double aspect = 1.0);

  int strands() const { return strands_; }
  std::size_t slice_count() const { return slices_.size(); }
  const Slice& slice(std::size_t k) const { return slices_[k]; }
  const std::vector<double>& endpoints() const { return endpoints_; }
  double aspect() const { return aspect_; }

  // Local time tau in [0, 1] within slice k; derivatives are d/dtau.
  State local_state(std::size_t k, double tau) const;
  // Global time t in [0, 1]; derivatives are d/dt. A boundary t = k/L
  // belongs to slice k-1.
  State state(double t) const;
  std::size_t slice_index(double t) const;

  // Positive lower bound on |z_i - z_j| over slice k.
  double min_separation(std::size_t k) const;

 private:
  int strands_;
  std::vector<double> endpoints_;
  double aspect_;
  std::vector<Slice> slices_;
};

BraidGeometry realize_geometry(const BraidWord& b, const std::vector<double>& endpoints,
                               double aspect = 1.0);

}  // namespace kzknot
