#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "phaselimit/cli.hpp"

namespace {

struct Flags {
  phaselimit::cli::RunConfig cfg;
  int ratio = 0;
  double beta = 0.0;
};

void add_options(CLI::App* sub, Flags& f) {
  auto& c = f.cfg;
  sub->add_option("--p", c.p, "number of phases");
  sub->add_option("--N", c.N, "total photon number");
  sub->add_option("--n", c.n, "photons per shot");
  sub->add_option("--k", c.k, "number of shots");
  sub->add_option("--ratio", f.ratio, "photons per phase N/p (sets N = ratio * p)");
  sub->add_option("--delta", c.delta, "full width of the phase region");
  sub->add_option("--N0", c.N0, "coarse-stage photons per phase");
  sub->add_option("--alpha", c.alpha, "ansatz exponent on the sensing arms");
  sub->add_option("--beta", f.beta, "ansatz exponent on the reference arm (default sqrt p)");
  sub->add_option("--resolution", c.resolution, "finest grid resolution R = 1/h");
  sub->add_option("--samples", c.samples, "Monte Carlo samples");
  sub->add_option("--seed", c.seed, "generator seed (default: PHASELIMIT_SEED or 20211)");
  sub->add_option("--ymin", c.ymin, "lower end of the margin scan");
  sub->add_option("--ymax", c.ymax, "upper end of the margin scan");
  sub->add_option("--c", c.c, "bound constant (default 4|A0|^3/27)");
  sub->add_option("--points", c.points, "grid points of the margin scan");
  sub->add_option("--pmax", c.pmax, "largest p in figure sweeps");
  sub->add_option("--threads", c.threads, "worker threads for sweeps and sampling");
  sub->add_option("-o,--output", c.output, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

const std::map<std::string, std::string> kDescriptions = {
    {"bounds", "joint and separate cost formulas at (p, N)"},
    {"ansatz", "continuous ansatz cost at (alpha, beta) and at the optimum"},
    {"discrete", "joint ansatz cost on the photon lattice"},
    {"separate", "optimal separate-strategy cost (p must divide N)"},
    {"advantage", "joint over separate cost ratio on the lattice"},
    {"simplex", "finite-difference simplex ground energy with extrapolation"},
    {"qfi-table", "cost table over strategies and resource regimes"},
    {"risk", "Kaiser-prior tail risks and the composite risk bound"},
    {"scan-margin", "minimum of the positivity margin on a log grid"},
    {"photon-stats", "closed-form photon statistics of the ansatz"},
    {"simulate", "Monte Carlo checks of photon statistics and the covariant cost"},
    {"reproduce", "regenerate a table or figure dataset"},
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Costs and bounds of multiple-phase interferometry"};
  app.set_version_flag("--version", std::string(PHASELIMIT_VERSION));
  app.require_subcommand(1);

  Flags f;
  f.cfg.seed = phaselimit::cli::default_seed();
  for (const auto& name : phaselimit::cli::commands()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    add_options(sub, f);
    if (name == "reproduce") {
      sub->add_option("figure", f.cfg.figure, "table-1, fig-comp, fig-fun, fig-advantage-left, fig-advantage-right")
          ->required();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(phaselimit::cli::ExitCode::bad_arguments);
  }

  for (auto* sub : app.get_subcommands()) {
    f.cfg.command = sub->get_name();
    if (sub->count("--ratio") > 0) f.cfg.ratio = f.ratio;
    if (sub->count("--beta") > 0) f.cfg.beta = f.beta;
  }
  return phaselimit::cli::run(f.cfg);
}
