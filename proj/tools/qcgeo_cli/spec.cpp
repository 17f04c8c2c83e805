#include "spec.hpp"

#include <fstream>
#include <set>

#include "qcgeo/errors.hpp"

namespace qcgeo::cli {

using nlohmann::json;

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Bvp: return "bvp";
    case Mode::FiberSweep: return "fiber-sweep";
    case Mode::Reduced: return "reduced";
    case Mode::PhaseOpt: return "phase-opt";
    case Mode::PerturbScan: return "perturb-scan";
    case Mode::Verify: return "verify";
    case Mode::Oracle: return "oracle";
  }
  return "?";
}

std::optional<Mode> mode_from_name(const std::string& name) {
  for (Mode m : {Mode::Bvp, Mode::FiberSweep, Mode::Reduced, Mode::PhaseOpt,
                 Mode::PerturbScan, Mode::Verify, Mode::Oracle}) {
    if (name == mode_name(m)) return m;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& constraint) {
  throw InputError("spec key \"" + key + "\": " + constraint);
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(key, "must be an integer");
  return j.get<int>();
}

std::vector<double> get_grid(const json& j, const std::string& key) {
  std::vector<double> grid;
  if (j.is_array()) {
    if (j.empty()) fail(key, "grid must not be empty");
    for (const auto& v : j) grid.push_back(get_number(v, key));
    return grid;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      (void)v;
      if (k != "min" && k != "max" && k != "count") {
        fail(key, "unknown grid key \"" + k + "\" (expected min/max/count)");
      }
    }
    if (!j.contains("min") || !j.contains("max") || !j.contains("count")) {
      fail(key, "grid object needs min, max and count");
    }
    const double lo = get_number(j.at("min"), key + ".min");
    const double hi = get_number(j.at("max"), key + ".max");
    const int count = get_int(j.at("count"), key + ".count");
    if (count < 1) fail(key, "count must be >= 1");
    if (count > 1 && !(hi > lo)) fail(key, "max must exceed min");
    for (int i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return grid;
  }
  fail(key, "must be an array of values or a {min, max, count} object");
}

std::array<double, 3> get_triple(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) fail(key, "must be an array of 3 numbers");
  return {get_number(j[0], key), get_number(j[1], key), get_number(j[2], key)};
}

std::array<double, 2> get_pair(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) fail(key, "must be an array of 2 numbers");
  return {get_number(j[0], key), get_number(j[1], key)};
}

GroupParams interior_point(GroupTag tag, const std::array<double, 3>& c,
                           const std::string& key) {
  const GroupParams p{c[0], c[1], c[2]};
  if (!std::isfinite(p.phi) || !std::isfinite(p.eta) ||
      !is_interior(tag, p.c1, kSingularGuard)) {
    fail(key, "coordinate on singular boundary");
  }
  return p;
}

std::array<double, 2> interior_point2(GroupTag tag, const std::array<double, 2>& c,
                                      const std::string& key) {
  if (!std::isfinite(c[1]) || !is_interior(tag, c[0], kSingularGuard)) {
    fail(key, "coordinate on singular boundary");
  }
  return c;
}

}  // namespace

ProblemSpec parse_spec(const json& doc, std::optional<Mode> mode_override) {
  if (!doc.is_object()) throw InputError("problem spec must be a JSON object");
  static const std::set<std::string> known{
      "group",      "mode",    "weights",      "t_f",       "start",
      "end",        "start2",  "end2",         "eta_grid",  "delta_grid",
      "shape_divisor", "path", "path_samples", "steps",     "solver",
      "n_knots",    "iters",   "input",        "seed",      "out"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known.count(key)) throw InputError("unknown key \"" + key + "\" in problem spec");
  }

  ProblemSpec spec;
  spec.echo = doc;

  if (!doc.contains("group")) fail("group", "required (su2 or su11)");
  const std::string group = doc.at("group").get<std::string>();
  if (group == "su2") {
    spec.group = GroupTag::SU2;
  } else if (group == "su11") {
    spec.group = GroupTag::SU11;
  } else {
    fail("group", "must be \"su2\" or \"su11\"");
  }

  if (doc.contains("mode")) {
    const auto m = mode_from_name(doc.at("mode").get<std::string>());
    if (!m) fail("mode", "unknown mode name");
    if (mode_override && *mode_override != *m) {
      fail("mode", "does not match the command-line subcommand");
    }
    spec.mode = *m;
  } else if (mode_override) {
    spec.mode = *mode_override;
  } else {
    fail("mode", "required when no subcommand supplies it");
  }

  if (doc.contains("weights")) {
    spec.weights.w = get_triple(doc.at("weights"), "weights");
    for (double w : spec.weights.w) {
      if (!(w > 0.0) || !std::isfinite(w)) fail("weights", "weights must be > 0");
    }
  }
  if (doc.contains("t_f")) {
    spec.t_f = get_number(doc.at("t_f"), "t_f");
    if (!(spec.t_f > 0.0)) fail("t_f", "must be > 0");
  }
  if (doc.contains("start")) {
    spec.start = interior_point(spec.group, get_triple(doc.at("start"), "start"), "start");
  }
  if (doc.contains("end")) {
    spec.end = interior_point(spec.group, get_triple(doc.at("end"), "end"), "end");
  }
  if (doc.contains("start2")) {
    spec.start2 = interior_point2(spec.group, get_pair(doc.at("start2"), "start2"), "start2");
  }
  if (doc.contains("end2")) {
    spec.end2 = interior_point2(spec.group, get_pair(doc.at("end2"), "end2"), "end2");
  }
  if (doc.contains("eta_grid")) spec.eta_grid = get_grid(doc.at("eta_grid"), "eta_grid");
  if (doc.contains("delta_grid")) {
    spec.delta_grid = get_grid(doc.at("delta_grid"), "delta_grid");
  }
  if (doc.contains("shape_divisor")) {
    spec.shape_divisor = get_number(doc.at("shape_divisor"), "shape_divisor");
    if (!(spec.shape_divisor > 0.0)) fail("shape_divisor", "must be > 0");
  }
  if (spec.shape_divisor == 0.0) {
    spec.shape_divisor = spec.group == GroupTag::SU2 ? 3.0 : 2.0;
  }

  if (doc.contains("path")) {
    const json& p = doc.at("path");
    if (p.is_string()) {
      if (p.get<std::string>() != "paper-example") {
        fail("path", "string form must be \"paper-example\"");
      }
      spec.path_kind = "paper-example";
    } else if (p.is_object()) {
      for (const auto& [k, v] : p.items()) {
        (void)v;
        if (k != "file") fail("path", "unknown path key \"" + k + "\"");
      }
      if (!p.contains("file")) fail("path", "object form needs a \"file\" key");
      spec.path_kind = "file";
      spec.path_file = p.at("file").get<std::string>();
    } else {
      fail("path", "must be \"paper-example\" or {\"file\": ...}");
    }
  }
  if (doc.contains("path_samples")) {
    spec.path_samples = get_int(doc.at("path_samples"), "path_samples");
    if (spec.path_samples < 256) fail("path_samples", "must be >= 256");
  }
  if (doc.contains("steps")) {
    spec.steps = get_int(doc.at("steps"), "steps");
    if (spec.steps < 64) fail("steps", "must be >= 64");
  }

  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    if (!s.is_object()) fail("solver", "must be an object");
    for (const auto& [k, v] : s.items()) {
      if (k == "newton_tol") {
        spec.solver.newton_tol = get_number(v, "solver.newton_tol");
      } else if (k == "max_newton_iters") {
        spec.solver.max_newton_iters = get_int(v, "solver.max_newton_iters");
      } else if (k == "restarts") {
        spec.solver.restarts = get_int(v, "solver.restarts");
      } else if (k == "fd_jacobian_eps") {
        spec.solver.fd_jacobian_eps = get_number(v, "solver.fd_jacobian_eps");
      } else {
        fail("solver", "unknown key \"" + k + "\"");
      }
    }
  }

  if (doc.contains("n_knots")) {
    spec.n_knots = get_int(doc.at("n_knots"), "n_knots");
    if (spec.n_knots < 8) fail("n_knots", "must be >= 8");
  }
  if (doc.contains("iters")) {
    spec.iters = get_int(doc.at("iters"), "iters");
    if (spec.iters < 1) fail("iters", "must be >= 1");
  }
  if (doc.contains("input")) spec.input = doc.at("input").get<std::string>();
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer()) {
      fail("seed", "must be a non-negative integer");
    }
    spec.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("out")) spec.out = doc.at("out").get<std::string>();

  spec.solver.steps = spec.steps;
  spec.solver.seed = spec.seed;
  spec.solver.validate();

  // mode-specific requirements
  auto need = [&](bool ok, const char* key, const char* what) {
    if (!ok) fail(key, std::string("required for mode ") + mode_name(spec.mode) +
                           " (" + what + ")");
  };
  switch (spec.mode) {
    case Mode::Bvp:
      need(spec.start.has_value(), "start", "initial point");
      need(spec.end.has_value(), "end", "target point");
      break;
    case Mode::FiberSweep:
      need(spec.start.has_value(), "start", "initial point");
      need(spec.end2.has_value(), "end2", "target state coordinates");
      need(!spec.eta_grid.empty(), "eta_grid", "final-phase grid");
      break;
    case Mode::Reduced:
      need(spec.start2.has_value(), "start2", "initial state coordinates");
      need(spec.end2.has_value(), "end2", "target state coordinates");
      break;
    case Mode::PhaseOpt:
      if (spec.path_kind == "file") need(!spec.path_file.empty(), "path", "file name");
      break;
    case Mode::PerturbScan:
      need(!spec.delta_grid.empty(), "delta_grid", "deviation grid");
      break;
    case Mode::Verify:
      need(!spec.input.empty(), "input", "trajectory CSV to verify");
      break;
    case Mode::Oracle:
      need(spec.start.has_value(), "start", "initial point");
      need(spec.end.has_value(), "end", "target point");
      break;
  }
  return spec;
}

ProblemSpec load_spec_file(const std::string& filename,
                           std::optional<Mode> mode_override) {
  std::ifstream in(filename);
  if (!in) throw InputError("cannot open spec file: " + filename);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + filename + ": " + e.what());
  }
  return parse_spec(doc, mode_override);
}

}  // namespace qcgeo::cli
