#include <cmath>

#include "doctest.h"
#include "kzknot/invariant.hpp"

using namespace kzknot;

namespace {

const QuotientBases& bases3() {
  static const QuotientBases b(3);
  return b;
}

// Index of O_3 among the surviving degree-3 coordinates.
std::size_t o3_index(const QuotientBases& b) {
  const std::vector<CircleDiagram> basis = b.ideal.quotient_basis(3, b.graded);
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (basis[j] == CircleDiagram::opposite(3)) return j;
  FAIL("O_3 is not a surviving coordinate");
  return 0;
}

TransportOptions opts(int degree = 3) {
  TransportOptions o;
  o.degree = degree;
  return o;
}

}  // namespace

TEST_SUITE("invariant") {

TEST_CASE("unknot from a single crossing") {
  const InvariantValue<Complex> y = compute_Y(parse_braid("1", 2), opts(), bases3());
  CHECK(y.coords[0][0] == Complex(1.0));
  for (int m = 1; m <= 3; ++m)
    for (std::size_t j = 0; j < y.coords[m].size(); ++j) CHECK(std::abs(y.coords[m][j]) <= y.error[m]);
}

TEST_CASE("trefoil and its mirror") {
  const std::size_t j = o3_index(bases3());
  const InvariantValue<Complex> y = compute_Y(parse_braid("1 1 1", 2), opts(), bases3());
  const InvariantValue<Complex> z = compute_Y(parse_braid("-1 -1 -1", 2), opts(), bases3());
  CHECK(std::abs(y.coords[3][j] - 0.5) <= y.error[3]);
  CHECK(std::abs(z.coords[3][j] + 0.5) <= z.error[3]);
  for (int m = 1; m <= 2; ++m) CHECK(y.coords[m].empty());
  CHECK(y.basis[3][j].to_string() == "[(1,4),(2,5),(3,6)]");
}

TEST_CASE("exact two-strand values") {
  const std::size_t j = o3_index(bases3());
  const InvariantValue<Rational> y3 = compute_Y_exact_two_strand(3, bases3());
  CHECK(y3.coords[0][0] == 1);
  CHECK(y3.coords[3][j] == Rational(1, 2));
  CHECK(compute_Y_exact_two_strand(-3, bases3()).coords[3][j] == Rational(-1, 2));
  const InvariantValue<Rational> y1 = compute_Y_exact_two_strand(1, bases3());
  for (int m = 1; m <= 3; ++m)
    for (const Rational& x : y1.coords[m]) CHECK(x == 0);
  CHECK_THROWS_AS(compute_Y_exact_two_strand(2, bases3()), NotAKnotError);
}

TEST_CASE("expansion of the trefoil against r plus and r minus") {
  // pZ(sigma_1^3) - (O + 6 r+ + 3 r-) is (1/2) O_3 through degree 3.
  const BraidWord b = parse_braid("1 1 1", 2);
  const CircleElement<Rational> pz = close(closed_form_power(3, 3), b);
  CHECK(pz.coefficient(CircleDiagram::opposite(1)) == Rational(3, 2));
  CHECK(pz.coefficient(CircleDiagram::opposite(2)) == Rational(9, 8));
  CHECK(pz.coefficient(CircleDiagram::opposite(3)) == Rational(9, 16));
  CircleElement<Rational> rest = pz - CircleElement<Rational>::unit(3);
  rest -= Rational(6) * r_plus_minus(1, 3);
  rest -= Rational(3) * r_plus_minus(-1, 3);
  CHECK(rest.terms().size() == 1);
  CHECK(rest.coefficient(CircleDiagram::opposite(3)) == Rational(1, 2));

  const BraidWord mirror = parse_braid("-1 -1 -1", 2);
  CircleElement<Rational> mrest = close(closed_form_power(-3, 3), mirror) - CircleElement<Rational>::unit(3);
  mrest -= Rational(3) * r_plus_minus(1, 3);
  mrest -= Rational(6) * r_plus_minus(-1, 3);
  CHECK(mrest.terms().size() == 1);
  CHECK(mrest.coefficient(CircleDiagram::opposite(3)) == Rational(-1, 2));
}

TEST_CASE("numeric values agree with exact values") {
  for (int k : {-3, -1, 1, 3}) {
    INFO("k = " << k);
    const BraidWord b(2, std::vector<Letter>(static_cast<std::size_t>(std::abs(k)), Letter{1, k < 0 ? -1 : 1}));
    const ComparisonVerdict v =
        compare_values(compute_Y(b, opts(), bases3()), to_complex(compute_Y_exact_two_strand(k, bases3())));
    CHECK(v.verdict == Verdict::kEqualWithinTol);
  }
}

TEST_CASE("degree-0 coordinate is exactly one and imaginary parts vanish") {
  for (const auto& [word, n] : std::vector<std::pair<const char*, int>>{
           {"1 1 1", 2}, {"1 2", 3}, {"1 -2 1 -2", 3}, {"1 2 3", 4}, {"1 1 1 2 -3", 4}}) {
    INFO(word);
    const InvariantValue<Complex> y = compute_Y(parse_braid(word, n), opts(), bases3());
    CHECK(y.coords[0][0] == Complex(1.0));
    for (int m = 0; m <= 3; ++m)
      for (const Complex& c : y.coords[m]) CHECK(std::abs(c.imag()) <= y.error[m]);
  }
}

TEST_CASE("values are rational multiples of 1/48 in degree 3") {
  const std::size_t j = o3_index(bases3());
  for (const auto& [word, n] : std::vector<std::pair<const char*, int>>{{"1 2", 3}, {"1 -2 1 -2", 3}, {"1 2 3", 4}}) {
    const InvariantValue<Complex> y = compute_Y(parse_braid(word, n), opts(), bases3());
    const double scaled = 48.0 * y.coords[3][j].real();
    CHECK(std::abs(scaled - std::round(scaled)) <= 48.0 * y.error[3]);
  }
}

TEST_CASE("non-knots are rejected") {
  try {
    compute_Y(parse_braid("1 1", 2), opts(), bases3());
    FAIL("expected an error");
  } catch (const NotAKnotError& e) {
    CHECK(e.components() == 2);
  }
  CHECK_THROWS_AS(closed_transport(parse_braid("", 3), opts()), NotAKnotError);
}

TEST_CASE("comparisons") {
  const ComparisonVerdict chiral = compare(parse_braid("1 1 1", 2), parse_braid("-1 -1 -1", 2), opts(), bases3());
  CHECK(chiral.verdict == Verdict::kDistinct);
  CHECK(std::abs(chiral.distance[3] - 1.0) <= chiral.bound[3]);
  const BraidWord b = parse_braid("1 -2 1 -2", 3);
  CHECK(compare(b, b, opts(), bases3()).verdict == Verdict::kEqualWithinTol);
  CHECK(to_string(Verdict::kEqualWithinTol) == "EQUAL_WITHIN_TOL");
  CHECK(to_string(Verdict::kDistinct) == "DISTINCT");
  CHECK(to_string(Verdict::kIndeterminate) == "INDETERMINATE");
}

TEST_CASE("verdict classification") {
  InvariantValue<Complex> a, b;
  a.degree = b.degree = 1;
  a.coords = {{1.0}, {0.0}};
  a.error = {0.0, 1e-3};
  b = a;
  b.coords[1][0] = 5e-4;
  CHECK(compare_values(a, b).verdict == Verdict::kEqualWithinTol);
  b.coords[1][0] = 5e-3;
  CHECK(compare_values(a, b).verdict == Verdict::kIndeterminate);
  b.coords[1][0] = 5e-2;
  CHECK(compare_values(a, b).verdict == Verdict::kDistinct);
  b.degree = 2;
  b.coords.push_back({});
  CHECK_THROWS_AS(compare_values(a, b), std::invalid_argument);
}

TEST_CASE("conjugation before the quotient") {
  const TransportOptions o = opts();
  CHECK(verify_markov1(parse_braid("1", 2), parse_braid("1 1", 2), o).pass);
  CHECK(verify_markov1(BraidWord(2, {}), parse_braid("1 1 1", 2), o).pass);
  CHECK(verify_markov1(parse_braid("1 2", 3), parse_braid("-1 2", 3), o).pass);
  CHECK(verify_markov1(parse_braid("1 -2", 3), parse_braid("1 1", 3), o).pass);
  // sigma_1 sigma_2 followed by sigma_2 closes to a two-component link.
  CHECK_THROWS_AS(verify_markov1(parse_braid("1 2", 3), parse_braid("2", 3), o), NotAKnotError);
}

TEST_CASE("stabilization of the unknot") {
  CHECK(verify_markov2(parse_braid("1", 2), -1, opts(), bases3()).pass);
  CHECK(verify_markov2(BraidWord(1, {}), 1, opts(), bases3()).pass);
}

TEST_CASE("explicit endpoints") {
  TransportOptions o = opts();
  o.endpoints = {1.0, 4.0};
  const InvariantValue<Complex> y = compute_Y(parse_braid("1 1 1", 2), o, bases3());
  const InvariantValue<Complex> z = compute_Y(parse_braid("1 1 1", 2), opts(), bases3());
  CHECK(compare_values(y, z).verdict == Verdict::kEqualWithinTol);
  // Endpoints that do not fit a braid fall back to the natural ones.
  CHECK(compare(parse_braid("1 1 1", 2), parse_braid("1 2", 3), o, bases3()).distance.size() == 4);
}

}  // TEST_SUITE
