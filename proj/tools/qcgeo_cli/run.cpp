#include "run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "csv.hpp"
#include "qcgeo/metric.hpp"
#include "qcgeo/phase_opt.hpp"
#include "qcgeo/propagate.hpp"
#include "qcgeo/version.hpp"

namespace qcgeo::cli {

using nlohmann::json;

namespace {

// previously reported optima for the built-in example path, replayed into the
// manifest next to the freshly computed values
constexpr double kReferenceEtaSu2 = -0.461;
constexpr double kReferenceEtaSu11 = -0.309;

void atomic_write_text(const std::string& filename, const std::string& content) {
  const std::string tmp = filename + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, filename);
}

PrescribedPath read_path_csv(const std::string& filename, GroupTag tag,
                             const AnisotropyWeights& weights) {
  std::ifstream in(filename);
  if (!in) throw InputError("cannot open path CSV: " + filename);
  std::string header;
  if (!std::getline(in, header) || header.rfind("t,c1,phi", 0) != 0) {
    throw InputError("path CSV must start with header t,c1,phi: " + filename);
  }
  std::vector<double> t, c1, phi;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 3) throw InputError("short row in path CSV: " + filename);
    t.push_back(vals[0]);
    c1.push_back(vals[1]);
    phi.push_back(vals[2]);
  }
  return path_from_samples(tag, weights, std::move(t), std::move(c1), std::move(phi));
}

PrescribedPath make_path(const ProblemSpec& spec) {
  if (spec.path_kind == "paper-example") {
    return ramp_squared_path(spec.group, spec.path_samples, spec.t_f, spec.weights);
  }
  return read_path_csv(spec.path_file, spec.group, spec.weights);
}

struct Artifacts {
  json outputs = json::object();
  json diagnostics = json::object();
  json results = json::object();
};

Artifacts run_bvp(const ProblemSpec& spec, const std::string& dir, int /*threads*/) {
  Artifacts art;
  SolveDiagnostics diag;
  Trajectory traj =
      solve_bvp(spec.group, spec.weights, *spec.start, *spec.end, spec.solver, &diag);
  if (spec.t_f != 1.0) traj = rescale_time(traj, spec.t_f);
  const std::string csv = dir + "/trajectory.csv";
  const double length = write_trajectory_csv(csv, traj);
  art.outputs["trajectory_csv"] = csv;
  art.diagnostics["newton_iters"] = diag.newton_iters;
  art.diagnostics["restarts_used"] = diag.restarts_used;
  art.diagnostics["final_residual"] = diag.final_residual;
  art.results["length"] = length;
  return art;
}

Artifacts run_fiber_sweep(const ProblemSpec& spec, const std::string& dir,
                          int threads) {
  Artifacts art;
  const SweepResult sweep = sweep_fiber(spec.group, spec.weights, *spec.start,
                                        *spec.end2, spec.eta_grid, spec.solver, threads);
  const std::string sweep_csv = dir + "/sweep.csv";
  write_sweep_csv(sweep_csv, sweep.grid);
  art.outputs["sweep_csv"] = sweep_csv;

  const GroupParams best_end{(*spec.end2)[0], (*spec.end2)[1], sweep.argmin_eta};
  SolveDiagnostics diag;
  Trajectory traj =
      solve_bvp(spec.group, spec.weights, *spec.start, best_end, spec.solver, &diag);
  if (spec.t_f != 1.0) traj = rescale_time(traj, spec.t_f);
  const std::string traj_csv = dir + "/trajectory.csv";
  write_trajectory_csv(traj_csv, traj);
  art.outputs["trajectory_csv"] = traj_csv;

  int failures = 0;
  for (const auto& e : sweep.grid) failures += e.converged ? 0 : 1;
  art.diagnostics["grid_failures"] = failures;
  art.diagnostics["argmin_newton_iters"] = diag.newton_iters;
  art.diagnostics["argmin_residual"] = diag.final_residual;
  art.results["argmin_eta"] = sweep.argmin_eta;
  art.results["argmin_length"] = sweep.argmin_length;
  return art;
}

Artifacts run_reduced(const ProblemSpec& spec, const std::string& dir, int /*threads*/) {
  Artifacts art;
  Trajectory traj = reduced_geodesic(spec.group, *spec.start2, *spec.end2, spec.steps);
  if (spec.t_f != 1.0) traj = rescale_time(traj, spec.t_f);
  const std::string csv = dir + "/trajectory.csv";
  const double length = write_trajectory_csv(csv, traj);
  art.outputs["trajectory_csv"] = csv;
  art.results["length"] = length;
  art.results["eta_f_optimal"] = traj.points.back().eta;
  return art;
}

Artifacts run_phase_opt(const ProblemSpec& spec, const std::string& dir, int threads) {
  Artifacts art;
  const PrescribedPath path = make_path(spec);
  const OptimalPhase opt = optimal_phase(path);
  const double eta_integral = opt.eta.back();

  std::vector<double> grid = spec.eta_grid;
  if (grid.empty()) {
    for (int i = 0; i <= 24; ++i) grid.push_back(eta_integral - 0.3 + 0.025 * i);
  }
  const SubmanifoldMetric metric = induced_metric(path);
  const SweepResult sweep = sweep_submanifold(metric, grid, threads);

  const std::string sweep_csv = dir + "/sweep.csv";
  write_sweep_csv(sweep_csv, sweep.grid);
  art.outputs["sweep_csv"] = sweep_csv;

  const Trajectory traj = assemble_optimal_trajectory(path);
  const std::string traj_csv = dir + "/trajectory.csv";
  const double length = write_trajectory_csv(traj_csv, traj);
  art.outputs["trajectory_csv"] = traj_csv;

  art.results["eta_f_integral"] = eta_integral;
  art.results["eta_f_sweep_argmin"] = sweep.argmin_eta;
  art.results["argmin_length"] = sweep.argmin_length;
  art.results["optimal_trajectory_length"] = length;
  art.results["reference_eta_f"] =
      spec.group == GroupTag::SU2 ? kReferenceEtaSu2 : kReferenceEtaSu11;
  return art;
}

Artifacts run_perturb_scan(const ProblemSpec& spec, const std::string& dir,
                           int /*threads*/) {
  Artifacts art;
  const PrescribedPath path = make_path(spec);
  const auto scan = perturbation_scan(path, spec.delta_grid, spec.shape_divisor);
  std::vector<SweepEntry> entries;
  entries.reserve(scan.size());
  double best_delta = scan.front().first;
  double best_len = scan.front().second;
  for (const auto& [delta, len] : scan) {
    entries.push_back({delta, len, true});
    if (len < best_len) {
      best_len = len;
      best_delta = delta;
    }
  }
  const std::string scan_csv = dir + "/scan.csv";
  write_sweep_csv(scan_csv, entries);
  art.outputs["scan_csv"] = scan_csv;
  art.results["argmin_delta"] = best_delta;
  art.results["argmin_length"] = best_len;
  art.results["shape_divisor"] = spec.shape_divisor;
  return art;
}

Artifacts run_verify(const ProblemSpec& spec, const std::string& dir, int /*threads*/) {
  Artifacts art;
  const Trajectory traj = read_trajectory_csv(spec.input, spec.group, spec.weights);
  const PropagationReport rep = verify_trajectory(traj);
  json report;
  report["final_infidelity"] = rep.final_infidelity;
  report["max_param_deviation"] = rep.max_param_deviation;
  report["unitarity_drift"] = rep.unitarity_drift;
  report["pseudo_norm_drift"] = rep.pseudo_norm_drift;
  const std::string report_json = dir + "/report.json";
  atomic_write_text(report_json, report.dump(2) + "\n");
  art.outputs["report_json"] = report_json;
  art.results = report;
  return art;
}

Artifacts run_oracle(const ProblemSpec& spec, const std::string& dir, int /*threads*/) {
  Artifacts art;
  (void)dir;
  const double length = path_oracle(spec.group, spec.weights, *spec.start, *spec.end,
                                    spec.n_knots, spec.iters);
  art.results["oracle_length"] = length;
  art.results["n_knots"] = spec.n_knots;
  art.results["iters"] = spec.iters;
  return art;
}

}  // namespace

int run(const ProblemSpec& spec, const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string dir = !opt.out_override.empty() ? opt.out_override
                          : !spec.out.empty()       ? spec.out
                                                    : std::string(".");
  try {
    std::filesystem::create_directories(dir);
    Artifacts art;
    switch (spec.mode) {
      case Mode::Bvp: art = run_bvp(spec, dir, opt.threads); break;
      case Mode::FiberSweep: art = run_fiber_sweep(spec, dir, opt.threads); break;
      case Mode::Reduced: art = run_reduced(spec, dir, opt.threads); break;
      case Mode::PhaseOpt: art = run_phase_opt(spec, dir, opt.threads); break;
      case Mode::PerturbScan: art = run_perturb_scan(spec, dir, opt.threads); break;
      case Mode::Verify: art = run_verify(spec, dir, opt.threads); break;
      case Mode::Oracle: art = run_oracle(spec, dir, opt.threads); break;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest;
    manifest["tool_version"] = kVersion;
    manifest["mode"] = mode_name(spec.mode);
    manifest["group"] = group_name(spec.group);
    manifest["seed"] = spec.seed;
    manifest["threads"] = opt.threads;
    manifest["wall_time_s"] = wall;
    manifest["spec"] = spec.echo;
    manifest["outputs"] = art.outputs;
    manifest["diagnostics"] = art.diagnostics;
    manifest["results"] = art.results;
    atomic_write_text(dir + "/manifest.json", manifest.dump(2) + "\n");
    return 0;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what()
              << " (best residual " << e.best_residual() << ")\n";
    return 2;
  } catch (const SingularityError& e) {
    std::cerr << "solver failure: " << e.what() << " at t = " << e.exit_time() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qcgeo::cli
