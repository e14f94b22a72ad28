#include "commands.hpp"
#include "polewave/error.hpp"
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#ifndef POLEWAVE_VERSION
#define POLEWAVE_VERSION "0.0.0"
#endif

using namespace polewave;
using namespace polewave::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoBound = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::no_bound_state:
    return kExitNoBound;
  case ErrorKind::validation:
    return kExitValidation;
  case ErrorKind::numerical:
    return kExitNumerical;
  }
  return kExitNumerical;
}

void add_common(CLI::App *sub, RunConfig &cfg) {
  sub->add_option("--potential", cfg.potential_path, "JSON potential description")
      ->check(CLI::ExistingFile);
  sub->add_option("--ell", cfg.ell, "Partial wave l");
  sub->add_option("--kmin", cfg.kmin, "Smallest momentum");
  sub->add_option("--kmax", cfg.kmax, "Largest momentum");
  sub->add_option("--ksteps", cfg.ksteps, "Number of momenta");
  sub->add_option("--h", cfg.h, "Radial step");
  sub->add_option("--rmax", cfg.rmax, "Outer radius of the grid");
  sub->add_option("--order", cfg.order, "Polynomial order of the k^2 fit");
  sub->add_option("--rule", cfg.rule, "k^2 sample rule: auto, threshold, pole_local");
  sub->add_option("--samples", cfg.samples, "Number of k^2 samples");
  sub->add_option("--spacing", cfg.spacing, "Sample spacing in units of alpha^2");
  sub->add_option("--r", cfg.rlist, "Radii for the extrapolation check")
      ->delimiter(',');
  sub->add_option("--alpha", cfg.alpha, "Bound-state alpha (skips the search)");
  sub->add_option("--beta", cfg.beta, "Separable shape parameter");
  sub->add_option("--amin", cfg.amin, "Lower end of the alpha search window");
  sub->add_option("--amax", cfg.amax, "Upper end of the alpha search window");
  sub->add_option("--parity", cfg.parity, "even or odd")
      ->check(CLI::IsMember({"even", "odd"}));
  sub->add_option("--method", cfg.method, "imaginary_axis or real_axis_fit");
  sub->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::csv},
                                        {"json", Format::json}}));
  sub->add_option("--out", cfg.out, "Output file (default stdout)");
  sub->add_option("--plot-data", cfg.plot, "Also write a whitespace table");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bound-state pole extrapolation of scattering wave functions"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", POLEWAVE_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;
  const std::map<std::string, std::string> help{
      {"phases", "Phase shifts and |S| - 1 on a k grid"},
      {"bound", "Bound states, normalization and asymptotic coefficient"},
      {"verify-pole", "Extrapolate the scattering wave function to the pole"},
      {"residue", "Residue of S at the bound-state pole"},
      {"gw-compare", "Single-k deviation of both extrapolation prefactors"},
      {"separable", "Closed-form separable model comparison"},
      {"oned", "One-dimensional even/odd states and extrapolation"}};
  for (const auto &name : command_names())
    add_common(app.add_subcommand(name, help.at(name)), cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    Metadata meta;
    meta.version = POLEWAVE_VERSION;
    meta.config_hash = fnv1a_hex(cfg.canonical());
    const Table t = run(cfg, meta);
    const std::string text = render(t, meta, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!(f << text))
        throw validation_error("cannot write " + cfg.out);
    }
    if (!cfg.plot.empty()) {
      std::ofstream f(cfg.plot, std::ios::binary);
      if (!(f << render_plot(t, meta)))
        throw validation_error("cannot write " + cfg.plot);
    }
  } catch (const Error &e) {
    std::cerr << "polewave: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "polewave: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
