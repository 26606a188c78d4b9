#include "kzknot/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kzknot {

QuotientBases::QuotientBases(int max_degree)
    : graded(max_degree), ideal(build_ideal(graded)) {}

ClosedTransport closed_transport(const BraidWord& b, const TransportOptions& opts) {
  const Permutation perm = permutation(b);
  if (perm.cycle_count() != 1) throw NotAKnotError(perm.cycle_count());
  const TransportResult z = transport(b, opts);
  const std::vector<std::size_t> mult = closure_multiplicity(perm, opts.degree);
  ClosedTransport out{close(z.value, b), {}};
  for (int m = 0; m <= opts.degree; ++m)
    out.error.push_back(z.error[m] * static_cast<double>(std::max<std::size_t>(mult[m], 1)));
  return out;
}

namespace {

template <class Scalar>
InvariantValue<Scalar> from_projection(Projection<Scalar> p, const QuotientBases& bases) {
  InvariantValue<Scalar> v;
  v.degree = bases.max_degree();
  for (int m = 0; m <= v.degree; ++m) v.basis.push_back(bases.ideal.quotient_basis(m, bases.graded));
  v.coords = std::move(p.coords);
  v.error = std::move(p.error);
  return v;
}

}  // namespace

InvariantValue<Complex> compute_Y(const BraidWord& b, const TransportOptions& opts,
                                  const QuotientBases& bases) {
  TransportOptions o = opts;
  o.degree = bases.max_degree();
  const ClosedTransport pz = closed_transport(b, o);
  return from_projection(project_k(pz.value, bases.graded, bases.ideal, pz.error), bases);
}

InvariantValue<Rational> compute_Y_exact_two_strand(int k, const QuotientBases& bases) {
  if (k % 2 == 0) throw NotAKnotError(2);
  const BraidWord b(2, std::vector<Letter>(static_cast<std::size_t>(std::abs(k)),
                                           Letter{1, k < 0 ? -1 : 1}));
  const CircleElement<Rational> pz = close(closed_form_power(k, bases.max_degree()), b);
  return from_projection(project_k(pz, bases.graded, bases.ideal), bases);
}

InvariantValue<Complex> to_complex(const InvariantValue<Rational>& v) {
  InvariantValue<Complex> out;
  out.degree = v.degree;
  out.basis = v.basis;
  out.error = v.error;
  for (const auto& row : v.coords) {
    std::vector<Complex> c;
    for (const Rational& x : row) c.emplace_back(x.get_d(), 0.0);
    out.coords.push_back(std::move(c));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kEqualWithinTol: return "EQUAL_WITHIN_TOL";
    case Verdict::kDistinct: return "DISTINCT";
    case Verdict::kIndeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

namespace {

Verdict classify(const std::vector<double>& distance, const std::vector<double>& bound,
                 double margin_factor) {
  bool all_equal = true;
  for (std::size_t m = 0; m < distance.size(); ++m) {
    if (distance[m] > bound[m] * (1.0 + margin_factor)) return Verdict::kDistinct;
    if (distance[m] > bound[m]) all_equal = false;
  }
  return all_equal ? Verdict::kEqualWithinTol : Verdict::kIndeterminate;
}

}  // namespace

ComparisonVerdict compare_values(const InvariantValue<Complex>& a, const InvariantValue<Complex>& b,
                                 double margin_factor) {
  if (a.degree != b.degree || a.coords.size() != b.coords.size())
    throw std::invalid_argument("invariant values truncated at different degrees");
  ComparisonVerdict v;
  for (std::size_t m = 0; m < a.coords.size(); ++m) {
    if (a.coords[m].size() != b.coords[m].size())
      throw std::invalid_argument("invariant values use different bases");
    double d = 0.0;
    for (std::size_t j = 0; j < a.coords[m].size(); ++j)
      d = std::max(d, std::abs(a.coords[m][j] - b.coords[m][j]));
    v.distance.push_back(d);
    v.bound.push_back(a.error[m] + b.error[m]);
  }
  v.verdict = classify(v.distance, v.bound, margin_factor);
  return v;
}

ComparisonVerdict compare(const BraidWord& b1, const BraidWord& b2, const TransportOptions& opts,
                          const QuotientBases& bases) {
  TransportOptions o1 = opts, o2 = opts;
  if (!opts.endpoints.empty()) {
    if (static_cast<int>(opts.endpoints.size()) != b1.strands()) o1.endpoints.clear();
    if (static_cast<int>(opts.endpoints.size()) != b2.strands()) o2.endpoints.clear();
  }
  return compare_values(compute_Y(b1, o1, bases), compute_Y(b2, o2, bases));
}

namespace {

CheckReport make_report(const std::vector<double>& distance, const std::vector<double>& bound,
                        const std::string& what) {
  CheckReport r;
  r.verdict = classify(distance, bound, 10.0);
  r.pass = r.verdict == Verdict::kEqualWithinTol;
  for (std::size_t m = 0; m < distance.size(); ++m) {
    r.max_distance = std::max(r.max_distance, distance[m]);
    r.max_bound = std::max(r.max_bound, bound[m]);
  }
  std::ostringstream s;
  s << what << ": max distance " << r.max_distance << ", max bound " << r.max_bound << " ("
    << to_string(r.verdict) << ")";
  r.detail = s.str();
  return r;
}

}  // namespace

CheckReport verify_markov1(const BraidWord& b1, const BraidWord& b2, const TransportOptions& opts) {
  const BraidWord left = concat(b1, b2);
  const BraidWord right = concat(b2, b1);
  const ClosedTransport a = closed_transport(left, opts);
  const ClosedTransport b = closed_transport(right, opts);
  std::vector<double> distance(static_cast<std::size_t>(opts.degree) + 1, 0.0);
  auto visit = [&](const CircleDiagram& d) {
    const double x = std::abs(a.value.coefficient(d) - b.value.coefficient(d));
    distance[d.chord_count()] = std::max(distance[d.chord_count()], x);
  };
  for (const auto& [d, c] : a.value.terms()) visit(d);
  for (const auto& [d, c] : b.value.terms()) visit(d);
  std::vector<double> bound;
  for (int m = 0; m <= opts.degree; ++m) bound.push_back(a.error[m] + b.error[m]);
  return make_report(distance, bound,
                     "markov1 [" + b1.to_string() + "] [" + b2.to_string() + "]");
}

CheckReport verify_markov2(const BraidWord& b, int sign, const TransportOptions& opts,
                           const QuotientBases& bases) {
  const BraidWord s = stabilize(b, sign);
  TransportOptions os = opts;
  if (!opts.endpoints.empty()) os.endpoints.push_back(opts.endpoints.back() + 1.0);
  const ComparisonVerdict v = compare_values(compute_Y(b, opts, bases), compute_Y(s, os, bases));
  return make_report(v.distance, v.bound,
                     "markov2 [" + b.to_string() + "] sign " + std::to_string(sign));
}

}  // namespace kzknot
