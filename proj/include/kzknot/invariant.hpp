#pragma once

#include <string>
#include <vector>

#include "kzknot/braid.hpp"
#include "kzknot/chord.hpp"
#include "kzknot/transport.hpp"

namespace kzknot {

// Truncated 4T quotient and ideal, built once per truncation degree.
struct QuotientBases {
  GradedBasis graded;
  IdealBasis ideal;

  explicit QuotientBases(int max_degree);
  int max_degree() const { return graded.max_degree(); }
};

// Y(K) truncated at `degree`, as coordinates on the surviving diagrams of
// each degree of the quotient.
template <class Scalar>
struct InvariantValue {
  int degree = 0;
  std::vector<std::vector<CircleDiagram>> basis;  // per degree
  std::vector<std::vector<Scalar>> coords;        // per degree, aligned with basis
  std::vector<double> error;                      // per degree
};

class NotAKnotError : public std::invalid_argument {
 public:
  explicit NotAKnotError(int components)
      : std::invalid_argument("closure has " + std::to_string(components) +
                              " components; the invariant is defined for knots only"),
        components_(components) {}
  int components() const { return components_; }

 private:
  int components_;
};

// pZ(b) with per-degree bounds on each diagram coefficient.
struct ClosedTransport {
  CircleElement<Complex> value;
  std::vector<double> error;
};

ClosedTransport closed_transport(const BraidWord& b, const TransportOptions& opts);

InvariantValue<Complex> compute_Y(const BraidWord& b, const TransportOptions& opts,
                                  const QuotientBases& bases);

// Exact Y(closure of sigma_1^k) from the closed form; k must be odd.
InvariantValue<Rational> compute_Y_exact_two_strand(int k, const QuotientBases& bases);

InvariantValue<Complex> to_complex(const InvariantValue<Rational>& v);

enum class Verdict { kEqualWithinTol, kDistinct, kIndeterminate };
std::string to_string(Verdict v);

struct ComparisonVerdict {
  Verdict verdict = Verdict::kIndeterminate;
  std::vector<double> distance;  // per degree, max over coordinates
  std::vector<double> bound;     // per degree, sum of both error bounds
};

// DISTINCT if some distance exceeds bound * (1 + margin_factor); EQUAL if
// every distance is within its bound; INDETERMINATE otherwise.
ComparisonVerdict compare_values(const InvariantValue<Complex>& a, const InvariantValue<Complex>& b,
                                 double margin_factor = 10.0);

ComparisonVerdict compare(const BraidWord& b1, const BraidWord& b2, const TransportOptions& opts,
                          const QuotientBases& bases);

struct CheckReport {
  bool pass = false;
  Verdict verdict = Verdict::kIndeterminate;
  double max_distance = 0.0;
  double max_bound = 0.0;
  std::string detail;
};

// pZ(b1 b2) against pZ(b2 b1), before any quotient.
CheckReport verify_markov1(const BraidWord& b1, const BraidWord& b2, const TransportOptions& opts);
// Y(b) against Y((b ⊔ |) sigma_n^sign).
CheckReport verify_markov2(const BraidWord& b, int sign, const TransportOptions& opts,
                           const QuotientBases& bases);

}  // namespace kzknot
