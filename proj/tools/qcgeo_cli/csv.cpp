#include "csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcgeo/field_synth.hpp"
#include "qcgeo/metric.hpp"
#include "qcgeo/quadrature.hpp"

namespace qcgeo::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write(const std::string& filename, const std::string& content) {
  const std::string tmp = filename + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, filename);
}

}  // namespace

double write_trajectory_csv(const std::string& filename, const Trajectory& traj) {
  validate_trajectory(traj, /*require_interior_points=*/false);
  const Trajectory t = with_velocities(traj);
  const bool su2 = t.tag == GroupTag::SU2;

  std::vector<double> rate(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    rate[i] = cost_rate(t.tag, t.weights, t.points[i], t.velocities[i]);
  }
  const std::vector<double> cum = cumulative_integral(t.times, rate);

  std::ostringstream out;
  out << "t,c1,phi,eta,v_c1,v_phi,v_eta,f0,f1,f2,cost_rate,cum_cost";
  if (su2) out << ",n_x,n_y,n_z";
  out << "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const FieldVector f = fields_at(t.tag, t.points[i], t.velocities[i]);
    out << fmt(t.times[i]) << ',' << fmt(t.points[i].c1) << ',' << fmt(t.points[i].phi)
        << ',' << fmt(t.points[i].eta) << ',' << fmt(t.velocities[i][0]) << ','
        << fmt(t.velocities[i][1]) << ',' << fmt(t.velocities[i][2]) << ','
        << fmt(f.f[0]) << ',' << fmt(f.f[1]) << ',' << fmt(f.f[2]) << ','
        << fmt(rate[i]) << ',' << fmt(cum[i]);
    if (su2) {
      const auto n = bloch_vector(t.points[i]);
      out << ',' << fmt(n[0]) << ',' << fmt(n[1]) << ',' << fmt(n[2]);
    }
    out << "\n";
  }
  atomic_write(filename, out.str());
  return cum.back();
}

Trajectory read_trajectory_csv(const std::string& filename, GroupTag tag,
                               const AnisotropyWeights& weights) {
  std::ifstream in(filename);
  if (!in) throw InputError("cannot open trajectory CSV: " + filename);
  std::string header;
  if (!std::getline(in, header)) throw InputError("empty trajectory CSV: " + filename);
  const std::string base = "t,c1,phi,eta,v_c1,v_phi,v_eta,f0,f1,f2,cost_rate,cum_cost";
  if (header.rfind(base, 0) != 0) {
    throw InputError("unexpected trajectory CSV header in " + filename);
  }

  Trajectory traj;
  traj.tag = tag;
  traj.weights = weights;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<double> vals;
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("bad numeric cell in " + filename + " line " +
                         std::to_string(lineno));
      }
    }
    if (vals.size() < 12) {
      throw InputError("short row in " + filename + " line " + std::to_string(lineno));
    }
    traj.times.push_back(vals[0]);
    traj.points.push_back({vals[1], vals[2], vals[3]});
    traj.velocities.push_back({vals[4], vals[5], vals[6]});
  }
  validate_trajectory(traj, /*require_interior_points=*/false);
  return traj;
}

void write_sweep_csv(const std::string& filename,
                     const std::vector<SweepEntry>& entries) {
  std::ostringstream out;
  out << "grid_value,length,converged\n";
  for (const auto& e : entries) {
    out << fmt(e.eta_f) << ',' << fmt(e.length) << ',' << (e.converged ? 1 : 0)
        << "\n";
  }
  atomic_write(filename, out.str());
}

}  // namespace qcgeo::cli
