#include "kzknot/transport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "kzknot/kernels.hpp"

namespace kzknot {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const Complex kTwoPiI(0.0, 2.0 * std::numbers::pi);

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr std::array<std::array<double, 6>, 7> kA = {{
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
}};
constexpr std::array<double, 7> kB5 = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                                       -2187.0 / 6784, 11.0 / 84, 0};
constexpr std::array<double, 7> kB4 = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                                       -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

std::vector<StrandPair> strand_pairs(int n) {
  std::vector<StrandPair> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
  return pairs;
}

// Right-hand side of W' = W A(tau) on one slice, in local time.
class SliceSystem {
 public:
  SliceSystem(const BraidGeometry& g, std::size_t slice, const kernels::WordLayout& layout,
              const std::vector<StrandPair>& pairs)
      : g_(g), slice_(slice), layout_(layout), pairs_(pairs), coeff_(pairs.size()) {}

  void operator()(double tau, std::span<const Complex> w, std::span<Complex> out) {
    const BraidGeometry::State st = g_.local_state(slice_, tau);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const int a = pairs_[p].lo - 1;
      const int b = pairs_[p].hi - 1;
      const Complex dd = st.dz[a] - st.dz[b];
      coeff_[p] = dd == Complex(0.0) ? Complex(0.0) : dd / (st.z[a] - st.z[b]) / kTwoPiI;
    }
    kernels::apply_connection(layout_, w, coeff_, out);
    ++evaluations;
  }

  std::size_t evaluations = 0;

 private:
  const BraidGeometry& g_;
  std::size_t slice_;
  const kernels::WordLayout& layout_;
  const std::vector<StrandPair>& pairs_;
  ComplexVector coeff_;
};

struct StepWork {
  std::vector<ComplexVector> k;
  ComplexVector tmp;
  explicit StepWork(std::size_t n) : k(7, ComplexVector(n)), tmp(n) {}
};

// One Dormand-Prince step; writes the 5th-order solution to y5 and, when
// requested, the 4th-order one to y4.
void dopri_step(SliceSystem& f, double tau, double h, const ComplexVector& y, StepWork& w,
                ComplexVector& y5, ComplexVector* y4) {
  for (int s = 0; s < 7; ++s) {
    std::array<double, 6> weights{};
    for (int j = 0; j < s; ++j) weights[j] = kA[s][j];
    kernels::combine_stages(y, h, std::span<const double>(weights.data(), static_cast<std::size_t>(s)),
                            std::span<const ComplexVector>(w.k.data(), static_cast<std::size_t>(s)),
                            w.tmp);
    f(tau + kC[s] * h, w.tmp, w.k[s]);
  }
  kernels::combine_stages(y, h, kB5, w.k, y5);
  if (y4) kernels::combine_stages(y, h, kB4, w.k, *y4);
}

}  // namespace

Complex kz_coefficient(const BraidGeometry& g, double t, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > g.strands() || j > g.strands())
    throw std::invalid_argument("kz_coefficient needs two distinct strands in range");
  const BraidGeometry::State st = g.state(t);
  const Complex dz = st.z[i - 1] - st.z[j - 1];
  if (std::abs(dz) == 0.0) throw std::domain_error("strands coincide");
  return (st.dz[i - 1] - st.dz[j - 1]) / dz / kTwoPiI;
}

TransportResult transport(const BraidWord& b, const TransportOptions& opts) {
  if (opts.degree < 0) throw std::invalid_argument("truncation degree must be nonnegative");
  if (!(opts.tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const int n = b.strands();
  const std::vector<double> endpoints = opts.endpoints.empty() ? natural_endpoints(n) : opts.endpoints;
  const BraidGeometry geometry(b, endpoints, opts.aspect);
  const std::vector<StrandPair> pairs = strand_pairs(n);
  const kernels::WordLayout layout(static_cast<int>(pairs.size()), opts.degree);
  const std::size_t dim = layout.size();

  TransportResult result{BraidElement<Complex>(n, opts.degree, permutation(b)),
                         std::vector<double>(static_cast<std::size_t>(opts.degree) + 1, 0.0),
                         {}};

  ComplexVector coarse(dim, 0.0);
  coarse[0] = 1.0;
  ComplexVector fine = coarse;
  StepWork work(dim);
  ComplexVector y5(dim), y4(dim), mid(dim);

  for (std::size_t s = 0; s < geometry.slice_count(); ++s) {
    SliceSystem f(geometry, s, layout, pairs);
    std::vector<double> grid = {0.0};
    double tau = 0.0;
    double h = 0.25;
    std::size_t steps = 0;
    while (tau < 1.0) {
      if (++steps > opts.max_steps_per_slice)
        throw TransportError(s, "step limit exceeded in slice " + std::to_string(s + 1));
      h = std::min(h, 1.0 - tau);
      if (h < 1e-13)
        throw TransportError(s, "step size underflow in slice " + std::to_string(s + 1));
      dopri_step(f, tau, h, coarse, work, y5, &y4);
      double err = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double scale = opts.tol * (1.0 + std::max(std::abs(coarse[i]), std::abs(y5[i])));
        err = std::max(err, std::abs(y5[i] - y4[i]) / scale);
      }
      if (!std::isfinite(err))
        throw TransportError(s, "non-finite solution in slice " + std::to_string(s + 1));
      if (err <= 1.0) {
        tau = (1.0 - tau - h <= 1e-15) ? 1.0 : tau + h;
        grid.push_back(tau);
        coarse.swap(y5);
        ++result.stats.steps;
      } else {
        ++result.stats.rejected;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= factor;
    }
    // Same grid, every step halved.
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
      const double t0 = grid[g];
      const double half = 0.5 * (grid[g + 1] - t0);
      dopri_step(f, t0, half, fine, work, mid, nullptr);
      dopri_step(f, t0 + half, half, mid, work, fine, nullptr);
    }
    result.stats.rhs_evaluations += f.evaluations;
  }

  const double floor_factor = 16.0 * kEps * static_cast<double>(2 * result.stats.steps + 1);
  for (int k = 0; k <= opts.degree; ++k) {
    double diff = 0.0;
    double size = 1.0;
    for (std::size_t i = layout.offset(k); i < layout.offset(k + 1); ++i) {
      diff = std::max(diff, std::abs(coarse[i] - fine[i]));
      size = std::max(size, std::abs(fine[i]));
    }
    result.error[static_cast<std::size_t>(k)] = k == 0 ? 0.0 : diff + floor_factor * size;
  }

  // Dense vector to words.
  const std::size_t P = pairs.size();
  for (int k = 0; k <= opts.degree; ++k) {
    for (std::size_t i = 0; i < layout.count(k); ++i) {
      const Complex c = fine[layout.offset(k) + i];
      if (c == Complex(0.0)) continue;
      ChordWord w(static_cast<std::size_t>(k));
      std::size_t code = i;
      for (int pos = k - 1; pos >= 0; --pos) {
        w[static_cast<std::size_t>(pos)] = pairs[code % P];
        code /= P;
      }
      result.value.add(w, c);
    }
  }
  return result;
}

BraidElement<Rational> closed_form_power(int k, int max_degree) {
  BraidWord b(2, std::vector<Letter>(static_cast<std::size_t>(std::abs(k)), Letter{1, k < 0 ? -1 : 1}));
  BraidElement<Rational> e(2, max_degree, permutation(b));
  Rational c(1);
  ChordWord w;
  for (int m = 0; m <= max_degree; ++m) {
    if (m > 0) {
      c *= Rational(k, 2 * m);
      w.push_back({1, 2});
    }
    e.add(w, c);
  }
  return e;
}

namespace {

std::vector<double> degree_max(const BraidElement<Complex>& e) {
  std::vector<double> out(static_cast<std::size_t>(e.max_degree()) + 1, 0.0);
  for (const auto& [w, c] : e.terms()) out[w.size()] = std::max(out[w.size()], std::abs(c));
  return out;
}

}  // namespace

TransportResult stack(const TransportResult& lower, const TransportResult& upper) {
  TransportResult out{stack(lower.value, upper.value), {}, {}};
  const std::vector<double> xl = degree_max(lower.value);
  const std::vector<double> xu = degree_max(upper.value);
  const int n = out.value.max_degree();
  out.error.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    double e = 0.0;
    double size = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double el = lower.error[k], eu = upper.error[m - k];
      e += el * xu[m - k] + xl[k] * eu + el * eu;
      size += xl[k] * xu[m - k];
    }
    out.error[static_cast<std::size_t>(m)] = e + 4.0 * kEps * (m + 1) * size;
  }
  out.stats.steps = lower.stats.steps + upper.stats.steps;
  out.stats.rejected = lower.stats.rejected + upper.stats.rejected;
  out.stats.rhs_evaluations = lower.stats.rhs_evaluations + upper.stats.rhs_evaluations;
  return out;
}

BraidElement<Complex> to_complex(const BraidElement<Rational>& e) {
  BraidElement<Complex> out(e.strands(), e.max_degree(), e.permutation());
  for (const auto& [w, c] : e.terms()) out.add(w, Complex(c.get_d(), 0.0));
  return out;
}

std::vector<double> degree_distance(const BraidElement<Complex>& a, const BraidElement<Complex>& b) {
  const int n = std::max(a.max_degree(), b.max_degree());
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  auto visit = [&](const ChordWord& w) {
    const double d = std::abs(a.coefficient(w) - b.coefficient(w));
    out[w.size()] = std::max(out[w.size()], d);
  };
  for (const auto& [w, c] : a.terms()) visit(w);
  for (const auto& [w, c] : b.terms()) visit(w);
  return out;
}

}  // namespace kzknot
