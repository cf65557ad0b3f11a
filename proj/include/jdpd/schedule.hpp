#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jdpd/circuit.hpp"

namespace jdpd {

enum class SwitchShape { Linear, RaisedCosine, Tanh };
enum class EnvelopeKind { None, Gaussian };

// Monotone ramp r(u) on u in [0,1] with r(0)=from, r(1)=to, exact endpoints.
struct Ramp {
  double from = 0.0;
  double to = 0.0;
  SwitchShape shape = SwitchShape::RaisedCosine;
  double value(double u) const;
};

// One sinusoidal stimulus shared by the whole schedule. Instantaneous phase
// is theta_r + omega_r (t - t_ref); gating windows and the envelope only
// scale the amplitude, so phase bookkeeping stays exact.
struct DriveWave {
  double amp_uA = 0.0;
  double freq_ghz = 7.0;
  double phase_rad = 0.0;   // theta_r
  double t_ref_ns = 0.0;
  EnvelopeKind envelope = EnvelopeKind::None;
  double envelope_std_ns = 0.1;
  double envelope_center_ns = 0.0;
  double on_from_ns = -1e300;   // amplitude zero before this time
  double off_from_ns = 1e300;   // raised-cosine turn-off starts here
  double off_fall_ns = 0.0;

  double current_uA(double t) const;
  double amplitude_bound_uA(double ta, double tb) const;
};

struct Segment {
  double t0_ns = 0.0;
  double t1_ns = 0.0;
  Ramp phi_plus;
  Ramp phi_minus;
  std::string label;
};

struct Markers {
  double t0 = 0.0;              // drive start
  double t1 = 0.0;              // flux-switch center
  double t2 = 0.0;              // sense end
  std::vector<double> flips;    // switch midpoints
  std::vector<double> flip_readouts;  // double-well dwell ends, one per flip
};

struct Schedule {
  std::vector<Segment> segments;
  DriveWave drive;
  Markers markers;

  double t_begin() const { return segments.front().t0_ns; }
  double t_end() const { return segments.back().t1_ns; }
  // Piecewise evaluation; throws std::out_of_range outside the span.
  std::pair<FluxBias, double> sample(double t_ns) const;
  FluxBias bias_at(double t_ns) const;
  // Largest bias-boundary jump, for the continuity invariant.
  double max_boundary_jump() const;
};

struct ProtocolConfig {
  double drive_freq_ghz = 7.0;
  double drive_phase_rad = 0.0;   // theta_r
  double amplitude_n = 2.0;       // phi0 / sigma
  double n_periods = 5.0;
  double envelope_std_ps = 100.0;
  EnvelopeKind envelope = EnvelopeKind::Gaussian;
  double t_flip_ps = 50.0;
  SwitchShape switch_shape = SwitchShape::RaisedCosine;
  double phi_minus_offset_rad = 0.0;  // theta_symm or compensation value
  int n_flips = 1;
  double cooldown_ns = 0.05;
  double flip_spacing_periods = 2.0;  // multiflip: integer periods between switch centers
  double sense_ns = 0.0;              // 0 = five (bounded) well periods
  double drive_off_periods = 2.0;     // fast-mode raised-cosine turn-off
  double overlap_ns = 0.0;            // drive end past the switch (4 ns experimental default)
  // Experimental-variant timings
  double exp_cooldown_ns = 100.0;
  double exp_settle_ns = 39.0;    // wait between the phi- step and the drive
  double exp_drive_ns = 3000.0;
  double exp_overlap_ns = 4.0;    // drive end retarded past the switch start
  double exp_bias_rise_ns = 1.0;
  double theta_detect_rad = 0.2;

  double drive_period_ns() const { return 1.0 / drive_freq_ghz; }
};

void validate(const ProtocolConfig& cfg);

// Ready / Detection / Digitalization / Sense, flux-switch centered in the
// drive. Throws std::invalid_argument when t_flip reaches the drive duration.
Schedule make_detection_schedule(const ProtocolConfig& cfg, const EnergyScales& scales);

// Experimentally used staging: long cooldown, phi- stepped to the symmetry
// value, seconds-scale drive, retarded drive end, phi- stepped to the detect
// offset for the sense stage.
Schedule make_experimental_schedule(const ProtocolConfig& cfg, const EnergyScales& scales);

// Repeated digitalization on one continuous tone; switch centers are spaced
// an integer number of drive periods so every flip lands on an equivalent
// drive phase. n_flips = 1 degenerates exactly to the detection schedule.
Schedule make_multiflip_schedule(const ProtocolConfig& cfg, const EnergyScales& scales);

}  // namespace jdpd
