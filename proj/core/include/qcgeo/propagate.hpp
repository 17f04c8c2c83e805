#pragma once

#include <vector>

#include "qcgeo/field_synth.hpp"
#include "qcgeo/lie_rep.hpp"
#include "qcgeo/trajectory.hpp"

namespace qcgeo {

struct EvolveOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
};

struct OperatorEvolution {
  std::vector<double> times;
  std::vector<Complex2x2> operators;
};

struct StateEvolution {
  std::vector<double> times;
  std::vector<QuantumState> states;
};

/// Verification summary for one trajectory.
struct PropagationReport {
  double final_infidelity = 0.0;
  double max_param_deviation = 0.0;  // max-abs entry gap to the intended operator
  double pseudo_norm_drift = 0.0;    // SU11: max |U^dag sz U - sz|
  double unitarity_drift = 0.0;      // SU2:  max |U^dag U - 1|
};

/// Integrates i dU/dt = H(t) U under the sampled fields (linear interpolation
/// between samples), reporting U at every field sample time.
OperatorEvolution evolve(const FieldTrajectory& fields, const Complex2x2& initial,
                         const EvolveOptions& opt = {});

/// Same for a state: i dpsi/dt = H(t) psi.
StateEvolution evolve(const FieldTrajectory& fields, const QuantumState& initial,
                      const EvolveOptions& opt = {});

/// SU2: |<a|b>|^2. SU11: |a^dag sz b|^2 / (|a^dag sz a| |b^dag sz b|).
/// Inputs must satisfy their group's norm invariant within 1e-6.
double fidelity(GroupTag tag, const QuantumState& a, const QuantumState& b);

/// Synthesizes fields from the trajectory, evolves the operator from the
/// identity and compares sample-wise against the closed-form evolution
/// operator of the intended points.
PropagationReport verify_trajectory(const Trajectory& traj,
                                    const EvolveOptions& opt = {});

}  // namespace qcgeo
