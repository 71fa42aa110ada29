// Command-line front end: entropies, coarseness checks, composition,
// property suites, the (p, V) region scan and the fixed counterexamples.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "povm/coarseness.hpp"
#include "povm/infomeasures.hpp"
#include "povm/io.hpp"
#include "povm/region.hpp"
#include "povm/suites.hpp"

namespace {

using povm::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitError = 2;
constexpr int kExitAmbiguous = 3;

povm::Tolerances tolerances(double tol) {
  povm::Tolerances t = povm::default_tolerances();
  t.herm = t.psd = t.proj = t.complete = t.trace = t.zero = t.orth = tol;
  return t;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw povm::Error(povm::ErrorCode::ParseError, "cannot write " + out_path);
  out << text << '\n';
}

int cmd_entropy(const std::string& meas_file, const std::string& state_file, double tol) {
  const povm::Tolerances t = tolerances(tol);
  const auto c = povm::io::measurement_from_json(povm::io::read_file(meas_file), t);
  const auto rho = povm::io::state_from_json(povm::io::read_file(state_file), t);
  std::cout << povm::io::dump(povm::io::to_json(povm::observational_entropy(c, rho)), 2) << '\n';
  return kExitOk;
}

int cmd_check_coarser(const std::string& coarse_file, const std::string& fine_file,
                      const std::string& subspace_file, double tol) {
  const auto coarse = povm::io::measurement_from_json(povm::io::read_file(coarse_file));
  const auto fine = povm::io::measurement_from_json(povm::io::read_file(fine_file));
  povm::CoarsenessCertificate cert;
  if (subspace_file.empty()) {
    cert = povm::check_coarser(coarse, fine, tol);
  } else {
    const auto g = povm::io::subspace_from_json(povm::io::read_file(subspace_file));
    cert = povm::check_coarser_in_subspace(coarse, fine, g, tol);
  }
  std::cout << povm::io::dump(povm::io::to_json(cert), 2) << '\n';
  switch (cert.verdict) {
    case povm::Verdict::Feasible: return kExitOk;
    case povm::Verdict::Infeasible: return kExitFailed;
    case povm::Verdict::Ambiguous: return kExitAmbiguous;
  }
  return kExitError;
}

int cmd_compose(const std::string& first_file, const std::string& second_file,
                const std::string& out_path, double tol) {
  const povm::Tolerances t = tolerances(tol);
  const auto first = povm::io::measurement_from_json(povm::io::read_file(first_file), t);
  const auto second = povm::io::measurement_from_json(povm::io::read_file(second_file), t);
  const auto composed = povm::compose_measurements(first, second, t);
  emit(povm::io::dump(povm::io::to_json(composed), 2), out_path);
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::size_t trials, long dim, std::uint64_t seed) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = povm::suite_names();
  } else {
    names.push_back(suite);
  }
  Json reports = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    const povm::SuiteReport r = povm::run_suite(name, trials, dim, seed);
    ok = ok && r.passed();
    reports.push_back(povm::to_json(r));
  }
  std::cout << povm::io::dump(suite == "all" ? reports : reports[0], 2) << '\n';
  return ok ? kExitOk : kExitFailed;
}

int cmd_region_scan(double p1, double v1, double vtot, int grid, const std::string& out_path,
                    const std::string& format) {
  const auto cells = povm::region_scan(p1, v1, vtot, grid);
  std::ostringstream os;
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& c : cells) {
      rows.push_back(Json{{"p2", c.p2}, {"v2", c.v2}, {"s_greater", c.s_greater},
                          {"feasible", c.feasible}});
    }
    os << povm::io::dump(rows);
  } else {
    os.precision(17);
    os << "p2,v2,s_greater,feasible";
    for (const auto& c : cells) {
      os << '\n' << c.p2 << ',' << c.v2 << ',' << (c.s_greater ? 1 : 0) << ',' << (c.feasible ? 1 : 0);
    }
  }
  for (const auto& c : cells) {
    if (c.verdict == povm::Verdict::Ambiguous) {
      std::cerr << "warning: ambiguous verdict at p2=" << c.p2 << ", v2=" << c.v2 << '\n';
    }
  }
  emit(os.str(), out_path);
  return kExitOk;
}

int cmd_counterexamples(const std::string& format) {
  const auto results = povm::run_counterexamples();
  bool ok = true;
  Json out = Json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    if (format == "json") {
      out.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"violations", r.violations},
                         {"values", r.values}});
    } else {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
      for (const auto& v : r.violations) std::cerr << "  " << r.name << ": " << v << '\n';
    }
  }
  if (format == "json") std::cout << povm::io::dump(out, 2) << '\n';
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized measurements: observational entropy and coarseness"};
  app.require_subcommand(1);

  double tol = 0.0;
  std::string out_path;
  std::string format;

  auto* entropy = app.add_subcommand("entropy", "Observational entropy report for a state");
  std::string meas_file, state_file;
  entropy->add_option("measurement", meas_file, "measurement JSON file")->required();
  entropy->add_option("state", state_file, "state JSON file")->required();
  entropy->add_option("--tol", tol, "validation tolerance")->default_val(1e-10)->check(CLI::PositiveNumber);

  auto* coarser = app.add_subcommand("check-coarser", "Is the first measurement coarser than the second?");
  std::string coarse_file, fine_file, subspace_file;
  coarser->add_option("coarse", coarse_file, "coarse measurement JSON file")->required();
  coarser->add_option("fine", fine_file, "fine measurement JSON file")->required();
  coarser->add_option("--subspace", subspace_file, "restrict the relation to a subspace");
  coarser->add_option("--tol", tol, "feasibility tolerance")->default_val(1e-8)->check(CLI::PositiveNumber);

  auto* compose = app.add_subcommand("compose", "Measure the first, then the second");
  std::string first_file, second_file;
  compose->add_option("first", first_file, "first measurement (needs Kraus operators)")->required();
  compose->add_option("second", second_file, "second measurement")->required();
  compose->add_option("--out", out_path, "output file (default: stdout)");
  compose->add_option("--tol", tol, "validation tolerance")->default_val(1e-10)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run property suites");
  std::string suite;
  std::size_t trials = 500;
  long dim = 4;
  std::uint64_t seed = 42;
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  verify->add_option("--trials", trials, "trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--dim", dim, "Hilbert space dimension")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "random seed");

  auto* region = app.add_subcommand("region-scan", "Entropy and coarseness regions of two-outcome (p, V)");
  double p1 = 0.75, v1 = 1.0, vtot = 2.0;
  int grid = 101;
  region->add_option("--p1", p1, "reference probability of outcome 1");
  region->add_option("--v1", v1, "reference volume of outcome 1");
  region->add_option("--vtot", vtot, "total volume");
  region->add_option("--grid", grid, "grid points per axis");
  region->add_option("--out", out_path, "output file (default: stdout)");
  region->add_option("--format", format, "csv or json")->default_val("csv")->check(CLI::IsMember({"csv", "json"}));

  auto* examples = app.add_subcommand("counterexamples", "Replay the fixed counterexamples");
  examples->add_option("--format", format, "text or json")->default_val("text")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*entropy) return cmd_entropy(meas_file, state_file, tol);
    if (*coarser) return cmd_check_coarser(coarse_file, fine_file, subspace_file, tol);
    if (*compose) return cmd_compose(first_file, second_file, out_path, tol);
    if (*verify) return cmd_verify(suite, trials, dim, seed);
    if (*region) return cmd_region_scan(p1, v1, vtot, grid, out_path, format);
    if (*examples) return cmd_counterexamples(format);
  } catch (const povm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
