#include "jdpd/evolve.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "jdpd/constants.hpp"
#include "jdpd/potential.hpp"

namespace jdpd {

namespace {

using C = std::complex<double>;

// out = -i (M - M^dagger); exactly hermitian by construction.
void antihermitian_combine(const C* M, C* out, int n) {
  for (int j = 0; j < n; ++j) {
    const C* mc = M + static_cast<size_t>(j) * n;
    C* oc = out + static_cast<size_t>(j) * n;
    for (int i = 0; i < n; ++i) {
      const C m = mc[i];
      const C mt = std::conj(M[static_cast<size_t>(i) * n + j]);
      const C d = m - mt;
      oc[i] = C(d.imag(), -d.real());
    }
  }
}

// out += s (M + M^dagger)
void hermitian_accumulate(C* out, const C* M, double s, int n) {
  for (int j = 0; j < n; ++j) {
    const C* mc = M + static_cast<size_t>(j) * n;
    C* oc = out + static_cast<size_t>(j) * n;
    for (int i = 0; i < n; ++i) {
      oc[i] += s * (mc[i] + std::conj(M[static_cast<size_t>(i) * n + j]));
    }
  }
}

struct Observer {
  const RecordSpec& rec;
  const OperatorSet& ops;
  const DeviceParams& params;
  const Schedule& schedule;
  double gamma;
  Trajectory traj;
  double next_t;
  double next_snap_t;
  std::vector<double> vbuf;

  Observer(const RecordSpec& r, const OperatorSet& o, const DeviceParams& p,
           const Schedule& s, double g)
      : rec(r), ops(o), params(p), schedule(s), gamma(g) {
    next_t = schedule.t_begin();
    next_snap_t = rec.snapshot_stride_ns > 0.0 ? schedule.t_begin() : 1e300;
  }

  double stride_at(double t) const {
    if (t >= rec.fine_from_ns && rec.fine_stride_ns > 0.0) return rec.fine_stride_ns;
    return rec.stride_ns;
  }

  void record(const QuantumState& state, double t, bool force = false) {
    if (rec.snapshot_stride_ns > 0.0 && (t >= next_snap_t - 1e-12 || force)) {
      traj.snapshot_t.push_back(t);
      traj.snapshots.push_back(state.probabilities());
      while (next_snap_t <= t + 1e-12) next_snap_t += rec.snapshot_stride_ns;
    }
    if (!force && t < next_t - 1e-12) return;
    while (next_t <= t + 1e-12) next_t += stride_at(t);

    const double trace_dev = state.norm_deviation();
    traj.diag.max_trace_dev = std::max(traj.diag.max_trace_dev, trace_dev);
    if (trace_dev > 1e-6 || !std::isfinite(trace_dev)) {
      throw std::runtime_error(
          "evolve: trace/norm drift exceeded 1e-6 at t=" + std::to_string(t) +
          " ns; reduce the integration step");
    }
    if (state.mode == StateMode::DensityMatrix) {
      const int n = state.size();
      double herm = 0.0;
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
          herm = std::max(herm, std::abs(state.rho(i, j) - std::conj(state.rho(j, i))));
        }
      }
      traj.diag.max_herm_dev = std::max(traj.diag.max_herm_dev, herm);
    }

    traj.t.push_back(t);
    const Eigen::VectorXd prob = state.probabilities();
    if (rec.phi || rec.phi2) {
      double m1 = 0.0, m2 = 0.0;
      for (int i = 0; i < prob.size(); ++i) {
        m1 += prob[i] * ops.phi[i];
        m2 += prob[i] * ops.phi[i] * ops.phi[i];
      }
      if (rec.phi) traj.phi.push_back(m1);
      if (rec.phi2) traj.phi2.push_back(m2);
    }
    if (rec.n_photon) {
      double residue = 0.0;
      traj.n_photon.push_back(expectation(state, ops.n_photon, &residue));
      traj.diag.max_imag_residue = std::max(traj.diag.max_imag_residue, residue);
    }
    if (rec.energy) {
      const auto [bias, current] = schedule.sample(std::min(t, schedule.t_end()));
      potential_diagonal_rad_ns(ops, params, bias, current, vbuf);
      double residue = 0.0;
      const double kin = expectation(state, ops.kinetic, &residue);
      traj.diag.max_imag_residue = std::max(traj.diag.max_imag_residue, residue);
      traj.energy.push_back(kin + expectation_diag(state, vbuf));
    }
    if (rec.probabilities) {
      const auto [pl, pr] = well_probabilities(state, ops, rec.barrier_position_rad);
      traj.p_left.push_back(pl);
      traj.p_right.push_back(pr);
    }
  }
};

// Density-matrix master-equation right-hand side with cached banded operators.
struct MasterRhs {
  const OperatorSet& ops;
  const DeviceParams& params;
  const Schedule& schedule;
  double gamma;
  int n;
  std::vector<double> vbuf;
  Eigen::MatrixXcd scratch;

  MasterRhs(const OperatorSet& o, const DeviceParams& p, const Schedule& s, double g)
      : ops(o), params(p), schedule(s), gamma(g), n(static_cast<int>(o.phi.size())),
        scratch(n, n) {}

  void operator()(const Eigen::MatrixXcd& r, double t, Eigen::MatrixXcd& out) {
    const auto [bias, current] = schedule.sample(t);
    potential_diagonal_rad_ns(ops, params, bias, current, vbuf);
    ops.kinetic.apply_matrix(r.data(), scratch.data(), vbuf.data());
    antihermitian_combine(scratch.data(), out.data(), n);
    if (gamma > 0.0) {
      ops.a_op.apply_matrix(r.data(), scratch.data());
      ops.a_op.accumulate_right_transpose(gamma, scratch.data(), out.data());
      ops.n_photon.apply_matrix(r.data(), scratch.data());
      hermitian_accumulate(out.data(), scratch.data(), -0.5 * gamma, n);
    }
  }
};

// Schrodinger right-hand side; the Hamiltonian is shifted by a constant to
// center its spectrum (global phase only).
struct PureRhs {
  const OperatorSet& ops;
  const DeviceParams& params;
  const Schedule& schedule;
  double shift;
  std::vector<double> vbuf;

  PureRhs(const OperatorSet& o, const DeviceParams& p, const Schedule& s)
      : ops(o), params(p), schedule(s), shift(0.0) {}

  void operator()(const Eigen::VectorXcd& psi, double t, Eigen::VectorXcd& out) {
    const auto [bias, current] = schedule.sample(t);
    potential_diagonal_rad_ns(ops, params, bias, current, vbuf);
    for (auto& v : vbuf) v -= shift;
    ops.kinetic.apply(psi.data(), out.data(), vbuf.data());
    out *= C(0.0, -1.0);
  }
};

struct SegmentPlan {
  double dt;
  long long steps;
  double v_min, v_max;
};

}  // namespace

Trajectory evolve(QuantumState& state, const OperatorSet& ops, const DeviceParams& params,
                  const Schedule& schedule, double gamma_per_ns, const RecordSpec& rec,
                  const EvolveOptions& opt) {
  const int n = static_cast<int>(ops.phi.size());
  if (state.size() != n) {
    throw std::invalid_argument("evolve: state is not defined on the operator grid");
  }
  if (gamma_per_ns < 0.0) {
    throw std::invalid_argument("evolve: gamma must be non-negative");
  }
  if (gamma_per_ns > 0.0 && state.mode == StateMode::PureState) {
    throw std::invalid_argument(
        "evolve: PureState mode integrates unitary dynamics only; gamma > 0 requires "
        "DensityMatrix mode");
  }

  const EnergyScales scales = derive_energies(params);
  const double f_well_bound =
      scales.f0_ghz() * std::sqrt(1.0 + b_plus(params) + std::abs(b_minus(params)));
  const double dt_accuracy = 1.0 / (20.0 * f_well_bound);
  if (opt.dt_ns > dt_accuracy) {
    throw std::invalid_argument(
        "evolve: dt must resolve the fastest well oscillation (dt <= " +
        std::to_string(dt_accuracy) + " ns)");
  }

  const double k_bound = ops.kinetic.gershgorin_bound();
  const double n_bound = gamma_per_ns > 0.0 ? ops.n_photon.gershgorin_bound() : 0.0;

  Observer observer(rec, ops, params, schedule, gamma_per_ns);
  observer.record(state, schedule.t_begin(), true);

  MasterRhs master(ops, params, schedule, gamma_per_ns);
  PureRhs pure(ops, params, schedule);
  const bool dm = state.mode == StateMode::DensityMatrix;

  Eigen::MatrixXcd mk, mtmp, macc;
  Eigen::VectorXcd vk, vtmp, vacc;
  if (dm) {
    mk.resize(n, n);
    mtmp.resize(n, n);
    macc.resize(n, n);
  } else {
    vk.resize(n);
    vtmp.resize(n);
    vacc.resize(n);
  }

  std::vector<double> vwork;
  for (const Segment& seg : schedule.segments) {
    const double duration = seg.t1_ns - seg.t0_ns;
    if (duration <= 0.0) continue;

    // Potential spread over the segment, drive included at its local bound.
    double v_min = 1e300, v_max = -1e300;
    const double d_amp = schedule.drive.amplitude_bound_uA(seg.t0_ns, seg.t1_ns) * 1e-6 *
                         params.l_center_pH * 1e-12 / kPhi0Bar;
    bool double_well = false;
    for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double t = seg.t0_ns + u * duration;
      const FluxBias bias = schedule.bias_at(t);
      potential_diagonal_rad_ns(ops, params, bias, 0.0, vwork);
      for (int i = 0; i < n; ++i) {
        const double swing = scales.e_l_rad_ns() * d_amp * std::abs(ops.phi[i]);
        v_min = std::min(v_min, vwork[i] - swing);
        v_max = std::max(v_max, vwork[i] + swing);
      }
      if (u == 0.0 || u == 1.0) {
        if (analyze_shape(params, bias).kind == PotentialKind::DoubleWell) double_well = true;
      }
    }

    double dt;
    if (opt.dt_ns > 0.0) {
      dt = opt.dt_ns;
    } else {
      double stiff_im, stiff_re = 0.0;
      if (dm) {
        stiff_im = (v_max - v_min) + k_bound;
        stiff_re = gamma_per_ns * n_bound;
      } else {
        stiff_im = 0.5 * ((v_max - v_min) + k_bound);
      }
      const double x = std::sqrt((stiff_im / 2.8284) * (stiff_im / 2.8284) +
                                 (stiff_re / 2.7853) * (stiff_re / 2.7853));
      dt = opt.safety / x;
      dt = std::min(dt, double_well ? opt.dt_cap_double_well_ns : opt.dt_cap_harmonic_ns);
      dt = std::min(dt, dt_accuracy);
    }
    const long long steps = std::max(1LL, static_cast<long long>(std::ceil(duration / dt)));
    dt = duration / static_cast<double>(steps);
    observer.traj.diag.segment_dt.emplace_back(seg.t0_ns, dt);

    pure.shift = 0.5 * (v_min + v_max + k_bound);

    for (long long s = 0; s < steps; ++s) {
      const double t = seg.t0_ns + s * dt;
      if (dm) {
        Eigen::MatrixXcd& r = state.rho;
        master(r, t, mk);
        macc = r + (dt / 6.0) * mk;
        mtmp = r + (0.5 * dt) * mk;
        master(mtmp, t + 0.5 * dt, mk);
        macc += (dt / 3.0) * mk;
        mtmp = r + (0.5 * dt) * mk;
        master(mtmp, t + 0.5 * dt, mk);
        macc += (dt / 3.0) * mk;
        mtmp = r + dt * mk;
        master(mtmp, t + dt, mk);
        r = macc + (dt / 6.0) * mk;
      } else {
        Eigen::VectorXcd& p = state.psi;
        pure(p, t, vk);
        vacc = p + (dt / 6.0) * vk;
        vtmp = p + (0.5 * dt) * vk;
        pure(vtmp, t + 0.5 * dt, vk);
        vacc += (dt / 3.0) * vk;
        vtmp = p + (0.5 * dt) * vk;
        pure(vtmp, t + 0.5 * dt, vk);
        vacc += (dt / 3.0) * vk;
        vtmp = p + dt * vk;
        pure(vtmp, t + dt, vk);
        p = vacc + (dt / 6.0) * vk;
      }
      ++observer.traj.diag.total_steps;
      const double t_now = (s + 1 == steps) ? seg.t1_ns : t + dt;
      state.time_ns = t_now;
      observer.record(state, t_now, s + 1 == steps && &seg == &schedule.segments.back());
    }
  }

  return std::move(observer.traj);
}

}  // namespace jdpd
