// Throughput probe for the master-equation stepper; not a ctest target.
#include <chrono>
#include <cstdio>

#include "jdpd/evolve.hpp"
#include "jdpd/potential.hpp"
#include "test_util.hpp"

using namespace jdpd;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 128;
  const double span_ns = argc > 2 ? std::atof(argv[2]) : 0.05;
  const DeviceParams d = test::paper_device();
  const OperatorSet ops = build_operators(PhaseGrid{-6.0, 6.0, n}, d, DiffMode::Stencil5);
  const EnergyScales scales = derive_energies(d);

  ProtocolConfig cfg;
  cfg.cooldown_ns = span_ns;
  Schedule sch = make_detection_schedule(cfg, scales);

  QuantumState state = ground_state(ops, d, FluxBias{kPi / 2.0, 0.0}).to_density();
  RecordSpec rec;
  rec.stride_ns = 0.01;

  // Truncate to the ready segment only.
  Schedule shortened = sch;
  shortened.segments.resize(1);

  const auto start = std::chrono::steady_clock::now();
  Trajectory traj = evolve(state, ops, d, shortened, 1.0 / 0.007, rec);
  const auto stop = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(stop - start).count();
  std::printf("n=%d  steps=%lld  dt=%.3e ns  wall=%.3f s  steps/s=%.0f  est s/ns=%.1f\n", n,
              traj.diag.total_steps, traj.diag.segment_dt[0].second, secs,
              traj.diag.total_steps / secs, secs / span_ns);
  return 0;
}
