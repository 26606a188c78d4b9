#include "kzknot/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "kzknot/invariant.hpp"

namespace kzknot {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kIndeterminate: return "indeterminate";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "skipped";
}

CheckStatus SuiteResult::status() const {
  bool any_pass = false, any_indeterminate = false;
  for (const CheckResult& c : checks) {
    if (c.status == CheckStatus::kFail) return CheckStatus::kFail;
    any_indeterminate |= c.status == CheckStatus::kIndeterminate;
    any_pass |= c.status == CheckStatus::kPass;
  }
  if (any_indeterminate) return CheckStatus::kIndeterminate;
  return any_pass ? CheckStatus::kPass : CheckStatus::kSkipped;
}

bool any_failed(const std::vector<SuiteResult>& suites) {
  for (const SuiteResult& s : suites)
    if (s.status() == CheckStatus::kFail) return true;
  return false;
}

namespace {

CheckResult boolean(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail)};
}

// Runs `body`, turning exceptions into failures.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, CheckStatus::kFail, e.what()};
  }
}

CheckStatus from_verdict(Verdict v) {
  switch (v) {
    case Verdict::kEqualWithinTol: return CheckStatus::kPass;
    case Verdict::kDistinct: return CheckStatus::kFail;
    case Verdict::kIndeterminate: return CheckStatus::kIndeterminate;
  }
  return CheckStatus::kFail;
}

CheckStatus within(const std::vector<double>& distance, const std::vector<double>& bound) {
  CheckStatus s = CheckStatus::kPass;
  for (std::size_t m = 0; m < distance.size(); ++m) {
    if (distance[m] > 11.0 * bound[m]) return CheckStatus::kFail;
    if (distance[m] > bound[m]) s = CheckStatus::kIndeterminate;
  }
  return s;
}

std::string describe(const std::vector<double>& distance, const std::vector<double>& bound) {
  std::ostringstream s;
  s << "distance/bound by degree:";
  for (std::size_t m = 0; m < distance.size(); ++m) s << ' ' << distance[m] << '/' << bound[m];
  return s.str();
}

std::vector<double> sum(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + (i < b.size() ? b[i] : 0.0);
  return out;
}

SuiteResult braid_suite() {
  SuiteResult s{"braidlang", {}};
  s.checks.push_back(guarded("trefoil closes to a knot", [] {
    return boolean("trefoil closes to a knot", closure_components(parse_braid("1 1 1", 2)) == 1);
  }));
  s.checks.push_back(guarded("sigma_1^2 closes to a 2-component link", [] {
    return boolean("sigma_1^2 closes to a 2-component link",
                   closure_components(parse_braid("1 1", 2)) == 2);
  }));
  s.checks.push_back(guarded("inverse word undoes the permutation", [] {
    const BraidWord b = parse_braid("1 -2 3 2", 4);
    return boolean("inverse word undoes the permutation",
                   permutation(concat(b, inverse(b))).is_identity());
  }));
  s.checks.push_back(guarded("stabilization keeps knots", [] {
    const BraidWord b = parse_braid("1 -2", 3);
    return boolean("stabilization keeps knots", closure_components(stabilize(b, 1)) == 1 &&
                                                    closure_components(stabilize(b, -1)) == 1);
  }));
  return s;
}

SuiteResult algebra_suite(const QuotientBases& bases) {
  SuiteResult s{"circlealg", {}};
  const int n = bases.max_degree();
  s.checks.push_back(guarded("dims of A", [&] {
    const std::vector<std::size_t> expected = {1, 1, 2, 3, 6, 10};
    const std::vector<std::size_t> dims = bases.graded.dims();
    bool ok = true;
    std::ostringstream d;
    for (std::size_t m = 0; m < dims.size(); ++m) {
      d << (m ? "," : "") << dims[m];
      if (m < expected.size() && dims[m] != expected[m]) ok = false;
    }
    return boolean("dims of A", ok, d.str());
  }));
  s.checks.push_back(guarded("r+ and r- project to zero", [&] {
    bool ok = true;
    for (int sign : {1, -1}) {
      const Projection<Rational> p = project_k(r_plus_minus(sign, n), bases.graded, bases.ideal);
      for (const auto& row : p.coords)
        for (const Rational& x : row) ok &= sgn(x) == 0;
    }
    return boolean("r+ and r- project to zero", ok);
  }));
  if (n >= 3) {
    s.checks.push_back(guarded("O_3 survives the ideal", [&] {
      const CircleElement<Rational> o3 = CircleElement<Rational>::single(CircleDiagram::opposite(3), n);
      const Projection<Rational> p = project_k(o3, bases.graded, bases.ideal);
      bool nonzero = false;
      for (const Rational& x : p.coords[3]) nonzero |= sgn(x) != 0;
      return boolean("O_3 survives the ideal", nonzero);
    }));
  }
  s.checks.push_back(guarded("product is commutative and cut-independent mod 4T", [&] {
    const int top = std::min(n, 4);
    bool ok = true;
    for (int a = 0; a <= top && ok; ++a)
      for (int b = 0; a + b <= top && ok; ++b)
        for (const CircleDiagram& da : enumerate_diagrams(a))
          for (const CircleDiagram& db : enumerate_diagrams(b)) {
            const int m = a + b;
            auto coords = [&](const CircleDiagram& d) {
              return bases.graded.reduce(
                  m, bases.graded.diagram_vector(m, CircleElement<Rational>::single(d, m)));
            };
            const RationalVector ref = coords(connected_sum(da, db));
            if (coords(connected_sum(db, da)) != ref) ok = false;
            for (int ca = 0; ca < std::max(1, 2 * a) && ok; ++ca)
              for (int cb = 0; cb < std::max(1, 2 * b) && ok; ++cb)
                if (coords(connected_sum_at(da, ca, db, cb)) != ref) ok = false;
          }
    return boolean("product is commutative and cut-independent mod 4T", ok);
  }));
  return s;
}

SuiteResult horizontal_suite(int n) {
  SuiteResult s{"horizalg", {}};
  s.checks.push_back(guarded("closure is trace-like", [&] {
    const BraidWord b1 = parse_braid("1 2", 3), b2 = parse_braid("-1 -1", 3);
    BraidElement<Rational> e1(3, n, permutation(b1)), e2(3, n, permutation(b2));
    e1.add({}, 1);
    e1.add({{1, 2}}, Rational(1, 3));
    e1.add({{2, 3}, {1, 3}}, Rational(-2, 5));
    e2.add({}, 1);
    e2.add({{1, 3}}, Rational(1, 7));
    e2.add({{1, 2}, {2, 3}}, 2);
    return boolean("closure is trace-like", trace_swap_check(e1, e2, b1, b2));
  }));
  return s;
}

SuiteResult transport_suite(int n, double tol) {
  SuiteResult s{"kzflow", {}};
  TransportOptions o;
  o.degree = n;
  o.tol = tol;
  for (int k : {1, -1, 3}) {
    const std::string name = "sigma_1^" + std::to_string(k) + " matches closed form";
    s.checks.push_back(guarded(name, [&] {
      const TransportResult z = transport(BraidWord(2, std::vector<Letter>(std::abs(k), Letter{1, k > 0 ? 1 : -1})), o);
      const std::vector<double> d = degree_distance(z.value, to_complex(closed_form_power(k, n)));
      return CheckResult{name, within(d, z.error), describe(d, z.error)};
    }));
  }
  s.checks.push_back(guarded("multiplicativity", [&] {
    const BraidWord b1 = parse_braid("1 -2", 3), b2 = parse_braid("2 2 1", 3);
    const TransportResult whole = transport(concat(b1, b2), o);
    const TransportResult parts = stack(transport(b1, o), transport(b2, o));
    const std::vector<double> d = degree_distance(whole.value, parts.value);
    const std::vector<double> e = sum(whole.error, parts.error);
    return CheckResult{"multiplicativity", within(d, e), describe(d, e)};
  }));
  s.checks.push_back(guarded("inverse gives the unit", [&] {
    const BraidWord b = parse_braid("1 2 -1", 3);
    const TransportResult z = transport(concat(b, inverse(b)), o);
    const std::vector<double> d = degree_distance(z.value, BraidElement<Complex>::unit(3, n));
    return CheckResult{"inverse gives the unit", within(d, z.error), describe(d, z.error)};
  }));
  s.checks.push_back(guarded("braid relation modulo infinitesimal relations", [&] {
    const TransportResult a = transport(parse_braid("1 2 1", 3), o);
    const TransportResult b = transport(parse_braid("2 1 2", 3), o);
    BraidElement<Complex> diff = a.value;
    for (const auto& [w, c] : b.value.terms()) diff.add(w, -c);
    const RelationResidual r = residual_modulo(diff, sum(a.error, b.error), HorizontalRelations(3, n));
    return CheckResult{"braid relation modulo infinitesimal relations", within(r.residual, r.bound),
                       describe(r.residual, r.bound)};
  }));
  return s;
}

SuiteResult invariant_suite(const QuotientBases& bases, double tol) {
  SuiteResult s{"invariant", {}};
  const int n = bases.max_degree();
  TransportOptions o;
  o.degree = n;
  o.tol = tol;
  for (int k : {3, -3, 1}) {
    const std::string name = "numeric Y(sigma_1^" + std::to_string(k) + ") matches exact";
    s.checks.push_back(guarded(name, [&] {
      const InvariantValue<Complex> num = compute_Y(parse_braid(k == 1 ? "1" : (k > 0 ? "1 1 1" : "-1 -1 -1"), 2), o, bases);
      const ComparisonVerdict v = compare_values(num, to_complex(compute_Y_exact_two_strand(k, bases)));
      return CheckResult{name, from_verdict(v.verdict), describe(v.distance, v.bound)};
    }));
  }
  if (n >= 3) {
    s.checks.push_back(guarded("trefoil and mirror are distinct", [&] {
      const ComparisonVerdict v = compare(parse_braid("1 1 1", 2), parse_braid("-1 -1 -1", 2), o, bases);
      return CheckResult{"trefoil and mirror are distinct",
                         v.verdict == Verdict::kDistinct ? CheckStatus::kPass
                         : v.verdict == Verdict::kIndeterminate ? CheckStatus::kIndeterminate
                                                                : CheckStatus::kFail,
                         describe(v.distance, v.bound)};
    }));
  }
  s.checks.push_back(guarded("conjugation", [&] {
    const CheckReport r = verify_markov1(parse_braid("1 2", 3), parse_braid("-1 2", 3), o);
    return CheckResult{"conjugation", from_verdict(r.verdict), r.detail};
  }));
  const std::vector<std::pair<std::string, int>> stabilizations = {{"1", -1}, {"1 1 1", 1}, {"1 1 1", -1}};
  for (const auto& [word, sign] : stabilizations) {
    const std::string name = "stabilization of [" + word + "] sign " + std::to_string(sign);
    s.checks.push_back(guarded(name, [&] {
      const CheckReport r = verify_markov2(parse_braid(word, 2), sign, o, bases);
      return CheckResult{name, from_verdict(r.verdict), r.detail};
    }));
  }
  return s;
}

}  // namespace

std::vector<SuiteResult> run_selftest(int max_degree, double tol) {
  if (max_degree < 0) throw std::invalid_argument("truncation degree must be nonnegative");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const QuotientBases bases(max_degree);
  std::vector<SuiteResult> out;
  out.push_back(braid_suite());
  out.push_back(algebra_suite(bases));
  out.push_back(horizontal_suite(max_degree));
  if (max_degree == 0) {
    for (const char* name : {"kzflow", "invariant"})
      out.push_back({name, {{"numeric checks", CheckStatus::kSkipped, "truncation degree 0"}}});
    return out;
  }
  out.push_back(transport_suite(max_degree, tol));
  out.push_back(invariant_suite(bases, tol));
  return out;
}

}  // namespace kzknot
