#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bincube/errors.hpp"
#include "bincube/report.hpp"
#include "bincube/suites.hpp"

using namespace bincube;

namespace {

struct Options {
  std::string suite;
  std::vector<double> q, p, kappa;
  int dim = 0;
  int grid = 0;
  std::uint64_t seed = default_seed();
  std::vector<std::string> tol;
  std::vector<std::string> figures;
  std::string out;
  std::string out_dir = ".";
  std::string format = "json";
};

void add_options(CLI::App* app, Options& o) {
  app->add_option("--q", o.q, "q values (comma separated)")->delimiter(',');
  app->add_option("--p", o.p, "p values for the hy and young suites; default is the endpoint")->delimiter(',');
  app->add_option("--kappa", o.kappa, "kappa values for the energy suite")->delimiter(',');
  app->add_option("--dim", o.dim, "cube dimension");
  app->add_option("--grid", o.grid, "grid resolution, or instance count for random sweeps");
  app->add_option("--seed", o.seed, "random seed (default: $BINCUBE_SEED or built-in)");
  app->add_option("--tol", o.tol, "tolerance override key=value (repeatable)");
  app->add_option("--figure", o.figures, "figures to export: fig1 fig2 fig3 fig5")->delimiter(',');
  app->add_option("--out", o.out, "report file (default: stdout)");
  app->add_option("--out-dir", o.out_dir, "directory for figure CSV files");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

int run(const Options& o) {
  Report rep;
  SuiteConfig c;
  try {
    c.suite = parse_suite(o.suite);
    c.q_list = o.q;
    c.p_list = o.p;
    c.kappa_list = o.kappa;
    c.dim = o.dim;
    c.grid = o.grid;
    c.seed = o.seed;
    for (const auto& t : o.tol) c.tol.set_from_string(t);
    for (const auto& f : o.figures) c.figures.push_back(parse_figure(f));
    c.out_dir = o.out_dir;
    rep = run_suite(c);
  } catch (const UsageError& e) {
    std::cerr << "bincube: " << e.what() << '\n';
    return exit_code(Verdict::usage_error);
  }
  const std::string text = o.format == "csv" ? checks_csv(rep) : to_json(rep).dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "bincube: cannot write " << o.out << '\n';
      return exit_code(Verdict::usage_error);
    }
    f << text;
  }
  const Verdict v = rep.verdict();
  if (v != Verdict::pass) {
    std::cerr << "bincube: " << to_string(v);
    if (const auto* c = rep.first_failure()) std::cerr << " (" << c->id << ")";
    else if (rep.values.contains("error")) std::cerr << ": " << rep.values["error"].get<std::string>();
    std::cerr << '\n';
  }
  return exit_code(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification suites for inequalities on binary cubes"};
  app.require_subcommand(1);
  Options o;

  auto* generic = app.add_subcommand("run", "run the suite named by --suite");
  generic->add_option("--suite", o.suite, "suite name")->required();
  add_options(generic, o);

  for (const char* name :
       {"regions", "twopoint", "fourpoint", "certify", "energy", "hy", "young", "entropy", "triadic", "figures"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " suite");
    add_options(sub, o);
    // `certify --suite certify` style invocations name the suite twice.
    sub->add_option("--suite", o.suite, "suite name (defaults to the subcommand)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(Verdict::usage_error);
  }
  for (auto* sub : app.get_subcommands())
    if (sub->get_name() != "run" && o.suite.empty()) o.suite = sub->get_name();
  return run(o);
}
