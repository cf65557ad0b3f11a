#pragma once

#include <vector>

#include <Eigen/Dense>

#include "jdpd/operators.hpp"
#include "jdpd/schedule.hpp"
#include "jdpd/state.hpp"

namespace jdpd {

struct RecordSpec {
  double stride_ns = 1e-3;
  bool phi = true;
  bool phi2 = false;
  bool n_photon = false;
  bool energy = false;
  bool probabilities = true;
  double barrier_position_rad = 0.0;
  double snapshot_stride_ns = 0.0;  // 0 = no snapshots
  // Optional finer sampling tail (e.g. to resolve the ringdown).
  double fine_from_ns = 1e300;
  double fine_stride_ns = 0.0;
};

struct EvolveDiagnostics {
  double max_trace_dev = 0.0;
  double max_herm_dev = 0.0;
  double max_imag_residue = 0.0;
  long long total_steps = 0;
  std::vector<std::pair<double, double>> segment_dt;  // (segment start, dt used)
};

struct Trajectory {
  std::vector<double> t;
  std::vector<double> phi;
  std::vector<double> phi2;
  std::vector<double> n_photon;
  std::vector<double> energy;
  std::vector<double> p_left;
  std::vector<double> p_right;
  std::vector<double> snapshot_t;
  std::vector<Eigen::VectorXd> snapshots;  // per-cell probabilities
  EvolveDiagnostics diag;
};

struct EvolveOptions {
  double dt_ns = 0.0;                   // 0 = stability-derived per segment
  double dt_cap_harmonic_ns = 1e-4;
  double dt_cap_double_well_ns = 2e-5;
  double safety = 0.9;
};

// Integrates d rho/dt = -i[H(t), rho] + gamma (a rho a+ - {a+a, rho}/2) with
// the potential diagonal rebuilt from the schedule at every stage (kinetic
// and collapse operators cached). PureState mode integrates the Schrodinger
// equation and requires gamma = 0. Fixed-step RK4 within each segment, the
// step chosen from the spectral spread of the generator unless overridden.
// The state is advanced in place; recorded observables are returned.
Trajectory evolve(QuantumState& state, const OperatorSet& ops, const DeviceParams& params,
                  const Schedule& schedule, double gamma_per_ns, const RecordSpec& rec,
                  const EvolveOptions& opt = {});

}  // namespace jdpd
