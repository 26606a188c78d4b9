#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kzknot/braid.hpp"
#include "kzknot/horizontal.hpp"
#include "kzknot/linalg.hpp"

namespace kzknot {

struct TransportOptions {
  int degree = 3;
  double tol = 1e-10;
  std::vector<double> endpoints;  // empty: 1, 2, ..., n
  double aspect = 1.0;            // crossing shape, see BraidGeometry
  std::size_t max_steps_per_slice = 200000;
};

struct SolverStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

// Z(b) in the truncated free algebra on strand pairs, with per-degree bounds
// on the error of every word coefficient.
struct TransportResult {
  BraidElement<Complex> value;
  std::vector<double> error;
  SolverStats stats;
};

class TransportError : public std::runtime_error {
 public:
  TransportError(std::size_t slice, const std::string& what)
      : std::runtime_error(what), slice_(slice) {}
  std::size_t slice() const { return slice_; }

 private:
  std::size_t slice_;
};

// (1/2 pi i) (dz_i/dt - dz_j/dt) / (z_i - z_j) for 1-based strands i != j.
Complex kz_coefficient(const BraidGeometry& g, double t, int i, int j);

// Parallel transport of the KZ connection along the realized braid. Each
// letter is integrated with an adaptive Dormand-Prince 5(4) pair; the whole
// path is then re-integrated on the accepted grid with every step halved, and
// the coarse/fine difference is reported as the error bound of the fine
// result, which is the value returned.
TransportResult transport(const BraidWord& b, const TransportOptions& opts = {});

// Z(sigma_1^k) on two strands: sum_m (k/2)^m / m! {1,2}^m.
BraidElement<Rational> closed_form_power(int k, int max_degree);

// Z(b1 b2) = Z(b1) Z(b2) with error bounds propagated through the product.
TransportResult stack(const TransportResult& lower, const TransportResult& upper);

BraidElement<Complex> to_complex(const BraidElement<Rational>& e);

// Per-degree max |a_w - b_w| over words w.
std::vector<double> degree_distance(const BraidElement<Complex>& a, const BraidElement<Complex>& b);

}  // namespace kzknot
