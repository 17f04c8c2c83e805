#include <CLI11.hpp>
#include <iostream>

#include "qcgeo/version.hpp"
#include "qcgeo_cli/run.hpp"
#include "qcgeo_cli/spec.hpp"

using qcgeo::cli::Mode;

int main(int argc, char** argv) {
  CLI::App app{"qc-geo: minimum-cost quantum-control trajectories on SU(2) and "
               "SU(1,1) control manifolds"};
  app.set_version_flag("--version", qcgeo::kVersion);
  app.require_subcommand(1);

  struct SubArgs {
    std::string spec_file;
    std::string out;
    int threads = 1;
  };

  std::vector<std::pair<Mode, std::shared_ptr<SubArgs>>> subs;
  const std::pair<Mode, const char*> modes[] = {
      {Mode::Bvp, "solve a two-point geodesic boundary-value problem"},
      {Mode::FiberSweep, "sweep the final phase over a grid of geodesic BVPs"},
      {Mode::Reduced, "reduced-manifold geodesic lifted by the optimal phase"},
      {Mode::PhaseOpt, "optimal phase of a prescribed path plus submanifold sweep"},
      {Mode::PerturbScan, "cost of half-sine phase deviations around the optimum"},
      {Mode::Verify, "re-propagate an emitted trajectory and report deviations"},
      {Mode::Oracle, "brute-force upper bound on the geodesic length"},
  };
  for (const auto& [mode, help] : modes) {
    auto* sub = app.add_subcommand(qcgeo::cli::mode_name(mode), help);
    auto args = std::make_shared<SubArgs>();
    sub->add_option("--spec", args->spec_file, "problem spec (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args->out, "output directory (defaults to spec.out or .)");
    sub->add_option("--threads", args->threads, "worker threads for sweeps")
        ->envname("QC_GEO_THREADS")
        ->check(CLI::PositiveNumber);
    subs.emplace_back(mode, std::move(args));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // bad command line is an input error
  }

  for (const auto& [mode, args] : subs) {
    if (!app.get_subcommand(qcgeo::cli::mode_name(mode))->parsed()) continue;
    try {
      const qcgeo::cli::ProblemSpec spec =
          qcgeo::cli::load_spec_file(args->spec_file, mode);
      qcgeo::cli::RunOptions opt;
      opt.out_override = args->out;
      opt.threads = args->threads;
      return qcgeo::cli::run(spec, opt);
    } catch (const qcgeo::Error& e) {
      std::cerr << "input error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
