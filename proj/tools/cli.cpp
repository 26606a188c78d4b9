#include "kzknot/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kzknot/invariant.hpp"
#include "kzknot/selftest.hpp"

namespace kzknot {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string braid;
  std::string braid2;
  int strands = 0;
  int strands2 = 0;
  int degree = 3;
  double tol = 1e-10;
  std::string endpoints;
  std::string format = "text";
  bool exact = false;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_endpoints(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad endpoint '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(x))
      throw ConfigError("bad endpoint '" + item + "'");
    out.push_back(x);
  }
  return out;
}

TransportOptions options(const RunConfig& cfg) {
  TransportOptions o;
  o.degree = cfg.degree;
  o.tol = cfg.tol;
  o.endpoints = parse_endpoints(cfg.endpoints);
  return o;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

json rational_json(const Rational& x) { return x.get_str(); }

template <class Scalar>
json coords_json(const InvariantValue<Scalar>& v) {
  json coords = json::array();
  for (const auto& row : v.coords)
    for (const Scalar& c : row) {
      if constexpr (std::is_same_v<Scalar, Rational>)
        coords.push_back({rational_json(c), "0"});
      else
        coords.push_back({c.real(), c.imag()});
    }
  return coords;
}

template <class Scalar>
void print_invariant(const RunConfig& cfg, const BraidWord& b, const InvariantValue<Scalar>& v,
                     std::ostream& out) {
  if (cfg.format == "json") {
    json basis = json::array();
    for (const auto& row : v.basis)
      for (const CircleDiagram& d : row) basis.push_back(d.to_string());
    json j = {{"strands", b.strands()}, {"braid", b.to_string()}, {"degree", v.degree},
              {"basis", basis},         {"coords", coords_json(v)}, {"error", v.error}};
    out << j.dump() << '\n';
    return;
  }
  out << "braid " << b.to_string() << " on " << b.strands() << " strands, degree " << v.degree
      << '\n';
  for (int m = 0; m <= v.degree; ++m) {
    const std::size_t m_index = static_cast<std::size_t>(m);
    for (std::size_t j = 0; j < v.basis[m_index].size(); ++j) {
      const Scalar& c = v.coords[m_index][j];
      out << m << ' ' << v.basis[m_index][j].to_string() << ' ';
      if constexpr (std::is_same_v<Scalar, Rational>)
        out << c.get_str();
      else
        out << fmt(c.real()) << ' ' << fmt(c.imag()) << " +- " << fmt(v.error[m_index]);
      out << '\n';
    }
  }
}

// Exponent k when b is sigma_1^k on two strands.
int two_strand_power(const BraidWord& b) {
  if (b.strands() != 2) throw ConfigError("--exact needs a 2-strand braid");
  int k = 0;
  for (const Letter& l : b.letters()) k += l.sign;
  return k;
}

int cmd_dims(const RunConfig& cfg, std::ostream& out) {
  const QuotientBases bases(cfg.degree);
  const GradedBasis& gb = bases.graded;
  if (cfg.format == "json") {
    json rows = json::array();
    for (int m = 0; m <= cfg.degree; ++m) {
      json diagrams = json::array(), free = json::array(), quotient = json::array();
      for (const CircleDiagram& d : gb.degree(m).diagrams) diagrams.push_back(d.to_string());
      for (std::size_t i : gb.degree(m).free) free.push_back(gb.degree(m).diagrams[i].to_string());
      for (const CircleDiagram& d : bases.ideal.quotient_basis(m, gb)) quotient.push_back(d.to_string());
      rows.push_back({{"degree", m},
                      {"diagrams", gb.diagram_count(m)},
                      {"relation_rank", gb.relation_rank(m)},
                      {"dim_A", gb.dim(m)},
                      {"dim_quotient", bases.ideal.quotient_dim(m)},
                      {"diagram_list", diagrams},
                      {"A_basis", free},
                      {"quotient_basis", quotient}});
    }
    out << json{{"degree", cfg.degree}, {"degrees", rows}}.dump() << '\n';
    return exit_code::kOk;
  }
  out << "m diagrams 4T_rank dim_A dim_quotient\n";
  for (int m = 0; m <= cfg.degree; ++m)
    out << m << ' ' << gb.diagram_count(m) << ' ' << gb.relation_rank(m) << ' ' << gb.dim(m)
        << ' ' << bases.ideal.quotient_dim(m) << '\n';
  return exit_code::kOk;
}

int cmd_invariant(const RunConfig& cfg, std::ostream& out) {
  const BraidWord b = parse_braid(cfg.braid, cfg.strands);
  const int components = closure_components(b);
  if (components != 1) throw NotAKnotError(components);
  const QuotientBases bases(cfg.degree);
  if (cfg.exact) {
    print_invariant(cfg, b, compute_Y_exact_two_strand(two_strand_power(b), bases), out);
  } else {
    print_invariant(cfg, b, compute_Y(b, options(cfg), bases), out);
  }
  return exit_code::kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const BraidWord b1 = parse_braid(cfg.braid, cfg.strands);
  const BraidWord b2 = parse_braid(cfg.braid2, cfg.strands2 > 0 ? cfg.strands2 : cfg.strands);
  for (const BraidWord* b : {&b1, &b2})
    if (const int c = closure_components(*b); c != 1) throw NotAKnotError(c);
  const QuotientBases bases(cfg.degree);
  const ComparisonVerdict v = compare(b1, b2, options(cfg), bases);
  out << to_string(v.verdict) << '\n';
  if (cfg.format == "json") {
    out << json{{"verdict", to_string(v.verdict)}, {"distance", v.distance}, {"bound", v.bound}}.dump()
        << '\n';
  } else {
    for (std::size_t m = 0; m < v.distance.size(); ++m)
      out << m << ' ' << fmt(v.distance[m]) << ' ' << fmt(v.bound[m]) << '\n';
  }
  return exit_code::kOk;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  const std::vector<SuiteResult> suites = run_selftest(cfg.degree, cfg.tol);
  if (cfg.format == "json") {
    json j = json::array();
    for (const SuiteResult& s : suites) {
      json checks = json::array();
      for (const CheckResult& c : s.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
      j.push_back({{"suite", s.name}, {"status", to_string(s.status())}, {"checks", checks}});
    }
    out << j.dump() << '\n';
  } else {
    for (const SuiteResult& s : suites) {
      out << to_string(s.status()) << ' ' << s.name << '\n';
      for (const CheckResult& c : s.checks) {
        out << "  " << to_string(c.status) << ' ' << c.name;
        if (!c.detail.empty()) out << " (" << c.detail << ')';
        out << '\n';
      }
    }
  }
  return any_failed(suites) ? exit_code::kSelftestFailure : exit_code::kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Knot invariants from KZ transport along braids", "kzknot"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--degree", cfg.degree, "truncation degree")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto numeric = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "local solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--endpoints", cfg.endpoints, "bottom endpoints, e.g. \"1,2,3\"");
  };

  CLI::App* dims = app.add_subcommand("dims", "dimensions of the diagram spaces");
  common(dims);

  CLI::App* inv = app.add_subcommand("invariant", "invariant of a braid closure");
  common(inv);
  numeric(inv);
  inv->add_option("--braid", cfg.braid, "braid word, e.g. \"1 -2 1\"")->required();
  inv->add_option("--strands", cfg.strands, "strand count")->required();
  inv->add_flag("--exact", cfg.exact, "exact closed form (2-strand braids)");

  CLI::App* cmp = app.add_subcommand("compare", "compare the invariants of two braid closures");
  common(cmp);
  numeric(cmp);
  cmp->add_option("--braid", cfg.braid, "first braid word")->required();
  cmp->add_option("--strands", cfg.strands, "strand count of the first braid")->required();
  cmp->add_option("--braid2", cfg.braid2, "second braid word")->required();
  cmp->add_option("--strands2", cfg.strands2, "strand count of the second braid");

  CLI::App* self = app.add_subcommand("selftest", "run the property suites");
  common(self);
  self->add_option("--tol", cfg.tol, "local solver tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kConfig;
  }

  if (const char* p = std::getenv("KZKNOT_PRECISION"); p && *p && std::string(p) != "double") {
    err << "error: KZKNOT_PRECISION=" << p << " is not available; only double is supported\n";
    return exit_code::kConfig;
  }

  try {
    if (*dims) return cmd_dims(cfg, out);
    if (*inv) return cmd_invariant(cfg, out);
    if (*cmp) return cmd_compare(cfg, out);
    return cmd_selftest(cfg, out);
  } catch (const NotAKnotError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kNotAKnot;
  } catch (const TransportError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kConfig;
  }
}

}  // namespace kzknot
