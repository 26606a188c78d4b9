#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kzknot/braid.hpp"

using namespace kzknot;

namespace {

BraidWord random_word(std::mt19937& rng, int strands, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), idx(1, strands - 1), sgn(0, 1);
  std::vector<Letter> letters;
  for (int i = len(rng); i > 0; --i) letters.push_back({idx(rng), sgn(rng) ? 1 : -1});
  return BraidWord(strands, letters);
}

BraidParseError::Kind parse_error_kind(const std::string& text, int strands) {
  try {
    parse_braid(text, strands);
  } catch (const BraidParseError& e) {
    return e.kind();
  }
  FAIL("no error for '" << text << "'");
  return BraidParseError::Kind::kBadStrandCount;
}

}  // namespace

TEST_SUITE("braidlang") {

TEST_CASE("parse words") {
  const BraidWord b = parse_braid("1 1 1", 2);
  CHECK(b.strands() == 2);
  CHECK(b.length() == 3);
  for (const Letter& l : b.letters()) CHECK((l.index == 1 && l.sign == 1));

  const BraidWord t = parse_braid("", 3);
  CHECK(t.strands() == 3);
  CHECK(t.empty());

  const BraidWord m = parse_braid("  -2\t1 ", 3);
  REQUIRE(m.length() == 2);
  CHECK(m.letters()[0].index == 2);
  CHECK(m.letters()[0].sign == -1);
  CHECK(m.letters()[1].sign == 1);
}

TEST_CASE("parse errors carry kind and position") {
  using K = BraidParseError::Kind;
  CHECK(parse_error_kind("2", 2) == K::kIndexOutOfRange);
  CHECK(parse_error_kind("1 -3", 3) == K::kIndexOutOfRange);
  CHECK(parse_error_kind("1 0", 3) == K::kZeroToken);
  CHECK(parse_error_kind("1 a", 3) == K::kNotAnInteger);
  CHECK(parse_error_kind("1.5", 3) == K::kNotAnInteger);
  CHECK(parse_error_kind("1", 0) == K::kBadStrandCount);
  try {
    parse_braid("1 1 x 1", 2);
    FAIL("expected an error");
  } catch (const BraidParseError& e) {
    CHECK(e.token() == 3);
  }
}

TEST_CASE("render and parse round trip") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const BraidWord b = random_word(rng, 2 + trial % 4, 8);
    CHECK(parse_braid(b.to_string(), b.strands()) == b);
  }
}

TEST_CASE("permutations") {
  CHECK(permutation(parse_braid("1", 2)).images == std::vector<int>{2, 1});
  CHECK(permutation(parse_braid("", 4)).is_identity());
  const Permutation p = permutation(parse_braid("1 2 1", 3));
  CHECK(p.images == std::vector<int>{3, 2, 1});
  CHECK(permutation(parse_braid("1 2", 3)).cycle_count() == 1);
}

TEST_CASE("closure components") {
  CHECK(closure_components(parse_braid("1 1 1", 2)) == 1);
  CHECK(closure_components(parse_braid("1 1", 2)) == 2);
  CHECK(closure_components(parse_braid("1 2 1", 3)) == 2);
  CHECK(closure_components(parse_braid("", 3)) == 3);
}

TEST_CASE("concat, inverse, stabilize") {
  CHECK(concat(parse_braid("1", 2), parse_braid("1", 2)) == parse_braid("1 1", 2));
  const BraidWord b = parse_braid("1 -2 2", 3);
  CHECK(concat(b, BraidWord(3, {})) == b);
  CHECK(concat(parse_braid("1", 3), parse_braid("2", 3)).to_string() == "1 2");
  CHECK_THROWS_AS(concat(parse_braid("1", 2), parse_braid("1", 3)), std::invalid_argument);

  CHECK(inverse(parse_braid("1 1 1", 2)) == parse_braid("-1 -1 -1", 2));
  CHECK(inverse(parse_braid("1 -2", 3)).to_string() == "2 -1");
  CHECK(inverse(BraidWord(3, {})).empty());

  const BraidWord s = stabilize(parse_braid("1 1 1", 2), 1);
  CHECK(s.strands() == 3);
  CHECK(s.to_string() == "1 1 1 2");
  CHECK(stabilize(BraidWord(1, {}), 1) == parse_braid("1", 2));
  CHECK(stabilize(parse_braid("1", 2), -1).to_string() == "1 -2");
}

TEST_CASE("permutation properties on random words") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 4;
    const BraidWord b1 = random_word(rng, n, 6), b2 = random_word(rng, n, 6);
    CHECK(permutation(concat(b1, b2)) == permutation(b1).then(permutation(b2)));
    CHECK(permutation(inverse(b1)) == permutation(b1).inverse());
    CHECK(permutation(concat(b1, inverse(b1))).is_identity());
    for (int sign : {1, -1}) CHECK(closure_components(stabilize(b1, sign)) == closure_components(b1));
  }
}

TEST_CASE("geometry endpoints and separation") {
  const BraidWord b = parse_braid("1 -2 1 2", 3);
  const std::vector<double> x = {1.0, 2.5, 3.0};
  const BraidGeometry g(b, x, 1.0);
  const Permutation p = permutation(b);
  const BraidGeometry::State s0 = g.state(0.0), s1 = g.state(1.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(s0.z[i] - x[i]) < 1e-15);
    CHECK(std::abs(s1.z[i] - x[p(i + 1) - 1]) < 1e-12);
  }
  for (std::size_t k = 0; k < g.slice_count(); ++k) {
    const double bound = g.min_separation(k);
    CHECK(bound > 0);
    for (int j = 0; j <= 200; ++j) {
      const BraidGeometry::State st = g.local_state(k, j / 200.0);
      for (int a = 0; a < 3; ++a)
        for (int c = a + 1; c < 3; ++c) CHECK(std::abs(st.z[a] - st.z[c]) >= bound * (1 - 1e-12));
    }
  }
}

TEST_CASE("crossing winding sense") {
  const BraidGeometry up(parse_braid("1", 2), {1.0, 2.0}, 1.0);
  const BraidGeometry down(parse_braid("-1", 2), {1.0, 2.0}, 1.0);
  for (double t : {0.1, 0.5, 0.9}) {
    const auto a = up.state(t), b = down.state(t);
    const std::complex<double> rel_up = a.z[1] - a.z[0], rel_down = b.z[1] - b.z[0];
    const std::complex<double> expect = std::exp(std::complex<double>(0.0, std::numbers::pi * t));
    CHECK(std::abs(rel_up - expect) < 1e-14);
    CHECK(std::abs(rel_down - std::conj(expect)) < 1e-14);
  }
}

TEST_CASE("geometry validation") {
  const BraidWord b = parse_braid("1", 2);
  CHECK_THROWS_AS(BraidGeometry(b, {1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BraidGeometry(b, {2.0, 1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BraidGeometry(b, {0.0, 1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BraidGeometry(b, {1.0, 2.0}, 0.0), std::invalid_argument);
  const BraidGeometry trivial(BraidWord(3, {}), natural_endpoints(3), 1.0);
  const auto st = trivial.state(0.4);
  for (int i = 0; i < 3; ++i) {
    CHECK(st.z[i] == std::complex<double>(i + 1.0));
    CHECK(st.dz[i] == std::complex<double>(0.0));
  }
}

}  // TEST_SUITE
