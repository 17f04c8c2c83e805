#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcgeo/geodesic.hpp"
#include "qcgeo/group.hpp"

namespace qcgeo::cli {

enum class Mode { Bvp, FiberSweep, Reduced, PhaseOpt, PerturbScan, Verify, Oracle };

const char* mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);

/// One fully validated problem statement, defaults applied.
struct ProblemSpec {
  GroupTag group = GroupTag::SU2;
  Mode mode = Mode::Bvp;
  AnisotropyWeights weights{};
  double t_f = 1.0;

  std::optional<GroupParams> start;            // bvp, fiber-sweep, oracle
  std::optional<GroupParams> end;              // bvp, oracle
  std::optional<std::array<double, 2>> start2; // reduced
  std::optional<std::array<double, 2>> end2;   // fiber-sweep, reduced

  std::vector<double> eta_grid;    // fiber-sweep, phase-opt (may stay empty)
  std::vector<double> delta_grid;  // perturb-scan
  double shape_divisor = 0.0;      // 0 -> group default (su2: 3, su11: 2)

  std::string path_kind = "paper-example";  // or "file"
  std::string path_file;
  int path_samples = 2001;

  int steps = 2001;
  BvpConfig solver{};

  int n_knots = 50;  // oracle
  int iters = 400;

  std::string input;  // verify: trajectory CSV
  std::uint64_t seed = 1234;
  std::string out;  // output directory ("" -> current dir)

  nlohmann::json echo;  // original document, replayed into the manifest
};

/// Strict parse: unknown keys are rejected by name, mode-specific required
/// fields are enforced, coordinates must sit inside the singular guard band.
/// mode_override, when set, must agree with any "mode" key in the document.
ProblemSpec parse_spec(const nlohmann::json& doc,
                       std::optional<Mode> mode_override = std::nullopt);

ProblemSpec load_spec_file(const std::string& filename,
                           std::optional<Mode> mode_override = std::nullopt);

}  // namespace qcgeo::cli
