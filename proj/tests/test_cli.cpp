#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "kzknot/cli.hpp"
#include "kzknot/invariant.hpp"

using namespace kzknot;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "kzknot");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("dims table") {
  const Run r = run({"dims", "--degree", "3"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "m diagrams 4T_rank dim_A dim_quotient\n"
        "0 1 0 1 1\n"
        "1 1 0 1 0\n"
        "2 2 0 2 0\n"
        "3 5 2 3 1\n");
  const Run zero = run({"dims", "--degree", "0"});
  CHECK(zero.out == "m diagrams 4T_rank dim_A dim_quotient\n0 1 0 1 1\n");
}

TEST_CASE("dims json exports the bases") {
  const Run r = run({"dims", "--degree", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["degrees"][4]["dim_A"] == 6);
  CHECK(j["degrees"][4]["diagram_list"].size() == 18);
  CHECK(j["degrees"][3]["relation_rank"] == 2);
  CHECK(j["degrees"][3]["quotient_basis"][0] == "[(1,4),(2,5),(3,6)]");
  CHECK(j["degrees"][2]["dim_quotient"] == 0);
}

TEST_CASE("invariant of the trefoil") {
  const Run r = run({"invariant", "--braid", "1 1 1", "--strands", "2", "--degree", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["strands"] == 2);
  CHECK(j["braid"] == "1 1 1");
  CHECK(j["degree"] == 3);
  REQUIRE(j["basis"].size() == 2);
  CHECK(j["basis"][1] == "[(1,4),(2,5),(3,6)]");
  const double re = j["coords"][1][0], im = j["coords"][1][1], err = j["error"][3];
  CHECK(std::abs(re - 0.5) <= err);
  CHECK(std::abs(im) <= err);
}

TEST_CASE("json floats round trip bitwise") {
  const Run r = run({"invariant", "--braid", "1 -2 1 -2", "--strands", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const QuotientBases bases(3);
  const InvariantValue<Complex> y = compute_Y(parse_braid("1 -2 1 -2", 3), TransportOptions{}, bases);
  std::size_t k = 0;
  for (const auto& row : y.coords)
    for (const Complex& c : row) {
      CHECK(j["coords"][k][0].get<double>() == c.real());
      CHECK(j["coords"][k][1].get<double>() == c.imag());
      ++k;
    }
  CHECK(k == j["coords"].size());
}

TEST_CASE("exact invariant round trips as rationals") {
  const Run r = run({"invariant", "--braid", "-1 -1 -1", "--strands", "2", "--exact", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(Rational(j["coords"][1][0].get<std::string>()) == Rational(-1, 2));
  CHECK(Rational(j["coords"][0][0].get<std::string>()) == 1);
  const Run text = run({"invariant", "--braid", "1 1 1", "--strands", "2", "--exact"});
  CHECK(text.out.find("3 [(1,4),(2,5),(3,6)] 1/2\n") != std::string::npos);
  CHECK(run({"invariant", "--braid", "1 2", "--strands", "3", "--exact"}).code == exit_code::kConfig);
}

TEST_CASE("unknot text output") {
  const Run r = run({"invariant", "--braid", "1", "--strands", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("braid 1 on 2 strands, degree 3\n0 [] 1 0 +- ", 0) == 0);
}

TEST_CASE("non-knot closure") {
  const Run r = run({"invariant", "--braid", "1 1", "--strands", "2"});
  CHECK(r.code == exit_code::kNotAKnot);
  CHECK(r.err.find("2 components") != std::string::npos);
  CHECK(run({"compare", "--braid", "1", "--strands", "2", "--braid2", ""}).code == exit_code::kNotAKnot);
}

TEST_CASE("configuration errors") {
  CHECK(run({}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--braid", "1 x", "--strands", "2"}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--braid", "2", "--strands", "2"}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--braid", "1", "--strands", "2", "--degree", "-1"}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--braid", "1", "--strands", "2", "--tol", "0"}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--braid", "1", "--strands", "2", "--format", "xml"}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--braid", "1", "--strands", "2", "--endpoints", "1,a"}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--braid", "1", "--strands", "2", "--endpoints", "2,1"}).code == exit_code::kConfig);
  CHECK(run({"invariant", "--strands", "2"}).code == exit_code::kConfig);
  CHECK(run({"frobnicate"}).code == exit_code::kConfig);
}

TEST_CASE("solver non-convergence") {
  const Run r = run({"invariant", "--braid", "1", "--strands", "2", "--tol", "1e-300"});
  CHECK(r.code == exit_code::kNonConvergence);
  CHECK(r.err.find("slice 1") != std::string::npos);
}

TEST_CASE("compare verdicts") {
  const Run chiral = run({"compare", "--braid", "1 1 1", "--strands", "2", "--braid2", "-1 -1 -1"});
  CHECK(chiral.code == 0);
  CHECK(chiral.out.rfind("DISTINCT\n", 0) == 0);
  const Run same = run({"compare", "--braid", "1 -2 1 -2", "--strands", "3", "--braid2", "1 -2 1 -2", "--format", "json"});
  CHECK(same.out.rfind("EQUAL_WITHIN_TOL\n", 0) == 0);
  const json j = json::parse(same.out.substr(same.out.find('\n') + 1));
  CHECK(j["verdict"] == "EQUAL_WITHIN_TOL");
  CHECK(j["distance"].size() == 4);
}

TEST_CASE("selftest") {
  const Run zero = run({"selftest", "--degree", "0"});
  CHECK(zero.code == 0);
  CHECK(zero.out.find("skipped kzflow") != std::string::npos);
  CHECK(zero.out.find("skipped numeric checks (truncation degree 0)") != std::string::npos);

  const Run full = run({"selftest", "--format", "json"});
  const json j = json::parse(full.out);
  bool failed = false;
  for (const json& s : j) failed |= s["status"] == "fail";
  CHECK(full.code == (failed ? exit_code::kSelftestFailure : exit_code::kOk));
}

TEST_CASE("precision environment variable is reserved") {
  setenv("KZKNOT_PRECISION", "quad", 1);
  CHECK(run({"dims"}).code == exit_code::kConfig);
  setenv("KZKNOT_PRECISION", "double", 1);
  CHECK(run({"dims"}).code == exit_code::kOk);
  unsetenv("KZKNOT_PRECISION");
}

TEST_CASE("help") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("invariant") != std::string::npos);
}

}  // TEST_SUITE
