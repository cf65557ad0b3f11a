#include "jdpd/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jdpd/constants.hpp"

namespace jdpd {

double Ramp::value(double u) const {
  if (from == to) return from;
  double p = 0.0;
  switch (shape) {
    case SwitchShape::Linear:
      p = u;
      break;
    case SwitchShape::RaisedCosine:
      p = 0.5 * (1.0 - std::cos(kPi * u));
      break;
    case SwitchShape::Tanh: {
      constexpr double k = 2.5;
      p = 0.5 * (std::tanh(k * (2.0 * u - 1.0)) / std::tanh(k) + 1.0);
      break;
    }
  }
  return from + (to - from) * p;
}

double DriveWave::current_uA(double t) const {
  if (amp_uA == 0.0) return 0.0;
  if (t < on_from_ns) return 0.0;
  double gate = 1.0;
  if (t >= off_from_ns) {
    if (off_fall_ns <= 0.0 || t >= off_from_ns + off_fall_ns) return 0.0;
    gate = 0.5 * (1.0 + std::cos(kPi * (t - off_from_ns) / off_fall_ns));
  }
  double env = 1.0;
  if (envelope == EnvelopeKind::Gaussian) {
    const double z = (t - envelope_center_ns) / envelope_std_ns;
    env = std::exp(-0.5 * z * z);
  }
  const double phase = phase_rad + kTwoPi * freq_ghz * (t - t_ref_ns);
  return amp_uA * gate * env * std::sin(phase);
}

double DriveWave::amplitude_bound_uA(double ta, double tb) const {
  if (amp_uA == 0.0 || tb <= on_from_ns) return 0.0;
  double env = 1.0;
  if (envelope == EnvelopeKind::Gaussian) {
    // Envelope maximum over [ta, tb]: the center if inside, else the nearer edge.
    const double tc = std::clamp(envelope_center_ns, ta, tb);
    const double z = (tc - envelope_center_ns) / envelope_std_ns;
    env = std::exp(-0.5 * z * z);
  }
  return std::abs(amp_uA) * env;
}

std::pair<FluxBias, double> Schedule::sample(double t_ns) const {
  return {bias_at(t_ns), drive.current_uA(t_ns)};
}

FluxBias Schedule::bias_at(double t_ns) const {
  if (segments.empty() || t_ns < t_begin() - 1e-12 || t_ns > t_end() + 1e-12) {
    throw std::out_of_range("Schedule::sample: time outside the schedule span");
  }
  // Few segments; linear scan keeps boundary handling obvious.
  const Segment* seg = &segments.back();
  for (const auto& s : segments) {
    if (t_ns < s.t1_ns) {
      seg = &s;
      break;
    }
  }
  const double u = std::clamp((t_ns - seg->t0_ns) / (seg->t1_ns - seg->t0_ns), 0.0, 1.0);
  return FluxBias{seg->phi_plus.value(u), seg->phi_minus.value(u)};
}

double Schedule::max_boundary_jump() const {
  double worst = 0.0;
  for (size_t i = 0; i + 1 < segments.size(); ++i) {
    const FluxBias a{segments[i].phi_plus.value(1.0), segments[i].phi_minus.value(1.0)};
    const FluxBias b{segments[i + 1].phi_plus.value(0.0), segments[i + 1].phi_minus.value(0.0)};
    worst = std::max(worst, std::abs(a.phi_plus - b.phi_plus));
    worst = std::max(worst, std::abs(a.phi_minus - b.phi_minus));
  }
  return worst;
}

void validate(const ProtocolConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("ProtocolConfig: ") + name + " must be positive");
    }
  };
  positive(cfg.drive_freq_ghz, "drive_freq_ghz");
  positive(cfg.n_periods, "n_periods");
  positive(cfg.envelope_std_ps, "envelope_std_ps");
  positive(cfg.t_flip_ps, "t_flip_ps");
  positive(cfg.cooldown_ns, "cooldown_ns");
  if (cfg.amplitude_n < 0.0) {
    throw std::invalid_argument("ProtocolConfig: amplitude_n must be non-negative");
  }
  if (cfg.n_flips < 1) {
    throw std::invalid_argument("ProtocolConfig: n_flips must be at least 1");
  }
}

namespace {

double drive_amp_uA(const ProtocolConfig& cfg, const EnergyScales& scales,
                    const DeviceParams* device_hint = nullptr) {
  // I0 = (Phi0 / 2 pi L) * n * sigma. L is recovered from E_L.
  (void)device_hint;
  const double e_l_joule = scales.e_l_hghz * 1e9 * kPlanck;
  const double l_henry = kPhi0Bar * kPhi0Bar / e_l_joule;
  return cfg.amplitude_n * scales.sigma_rad * kPhi0Bar / l_henry * 1e6;
}

// Worst-case local well frequency, used for default sense durations.
double well_frequency_bound_ghz(const EnergyScales& scales) {
  return scales.f0_ghz() * std::sqrt(1.0 + 2.0 * scales.beta_l);
}

Schedule build_flip_train(const ProtocolConfig& cfg, const EnergyScales& scales) {
  validate(cfg);
  const double T = cfg.drive_period_ns();
  const double t_flip = cfg.t_flip_ps * 1e-3;
  const double drive_dur = cfg.n_periods * T;
  if (t_flip >= drive_dur) {
    throw std::invalid_argument("flux-switch duration must be shorter than the drive");
  }
  const double spacing = cfg.flip_spacing_periods * T;
  if (cfg.n_flips > 1 && spacing < 2.0 * t_flip) {
    throw std::invalid_argument("flip spacing below 2 t_flip: flips too dense");
  }

  const double t0 = cfg.cooldown_ns;
  const double t1 = t0 + 0.5 * drive_dur;  // first switch centered in the nominal tone
  const double half_pi = kPi / 2.0;
  const double pm = cfg.phi_minus_offset_rad;

  Schedule sch;
  sch.markers.t0 = t0;
  sch.markers.t1 = t1;

  auto constant = [&](double a, double b, double phi_plus, const char* label) {
    if (b - a <= 0.0) return;
    sch.segments.push_back({a, b, Ramp{phi_plus, phi_plus, cfg.switch_shape},
                            Ramp{pm, pm, cfg.switch_shape}, label});
  };
  auto ramp = [&](double a, double b, double from, double to, const char* label) {
    sch.segments.push_back({a, b, Ramp{from, to, cfg.switch_shape},
                            Ramp{pm, pm, cfg.switch_shape}, label});
  };

  constant(0.0, t0, half_pi, "ready");

  const double hold = 0.5 * spacing - t_flip;  // double-well dwell between ramps
  double cursor = t0;
  for (int j = 0; j < cfg.n_flips; ++j) {
    const double center = t1 + j * spacing;
    sch.markers.flips.push_back(center);
    constant(cursor, center - 0.5 * t_flip, half_pi, "detect");
    ramp(center - 0.5 * t_flip, center + 0.5 * t_flip, half_pi, kPi, "flip-up");
    if (j + 1 < cfg.n_flips) {
      const double dwell_end = center + 0.5 * t_flip + hold;
      constant(center + 0.5 * t_flip, dwell_end, kPi, "dwell");
      sch.markers.flip_readouts.push_back(dwell_end);
      ramp(dwell_end, dwell_end + t_flip, kPi, half_pi, "flip-down");
      cursor = dwell_end + t_flip;
    } else {
      cursor = center + 0.5 * t_flip;
    }
  }

  // Drive gating: off shortly after the final switch completes.
  const double off_start = cursor + cfg.overlap_ns;
  const double off_fall = cfg.drive_off_periods * T;
  const double sense_len =
      cfg.sense_ns > 0.0 ? cfg.sense_ns : 6.0 / well_frequency_bound_ghz(scales);
  const double t2 = off_start + off_fall + sense_len;
  constant(cursor, t2, kPi, "sense");
  sch.markers.flip_readouts.push_back(t2);
  sch.markers.t2 = t2;

  sch.drive.amp_uA = cfg.amplitude_n > 0.0 ? drive_amp_uA(cfg, scales) : 0.0;
  sch.drive.freq_ghz = cfg.drive_freq_ghz;
  sch.drive.phase_rad = cfg.drive_phase_rad;
  sch.drive.t_ref_ns = t0;
  sch.drive.on_from_ns = t0;
  sch.drive.off_from_ns = off_start;
  sch.drive.off_fall_ns = off_fall;
  sch.drive.envelope = cfg.n_flips > 1 ? EnvelopeKind::None : cfg.envelope;
  sch.drive.envelope_std_ns = cfg.envelope_std_ps * 1e-3;
  sch.drive.envelope_center_ns = t1;
  return sch;
}

}  // namespace

Schedule make_detection_schedule(const ProtocolConfig& cfg, const EnergyScales& scales) {
  ProtocolConfig c = cfg;
  c.n_flips = 1;
  return build_flip_train(c, scales);
}

Schedule make_multiflip_schedule(const ProtocolConfig& cfg, const EnergyScales& scales) {
  return build_flip_train(cfg, scales);
}

Schedule make_experimental_schedule(const ProtocolConfig& cfg, const EnergyScales& scales) {
  validate(cfg);
  const double half_pi = kPi / 2.0;
  const double rise = cfg.exp_bias_rise_ns;
  const double t_flip = std::max(cfg.t_flip_ps * 1e-3, 1e-6);
  const double pm = cfg.phi_minus_offset_rad;

  const double t_symm_step = cfg.exp_cooldown_ns;               // phi- stepped after cooldown
  const double t0 = t_symm_step + rise + cfg.exp_settle_ns;     // drive start
  const double switch_start = t0 + cfg.exp_drive_ns;            // flux switch begins
  const double drive_end = switch_start + cfg.exp_overlap_ns;   // stimulus retarded past the switch
  const double detect_step = std::max(drive_end, switch_start + t_flip) + 1.0;
  const double sense_len = cfg.sense_ns > 0.0 ? cfg.sense_ns : 10.0;
  const double t2 = detect_step + rise + sense_len;

  Schedule sch;
  auto seg = [&](double a, double b, Ramp pp, Ramp pmr, const char* label) {
    if (b - a <= 0.0) return;
    sch.segments.push_back({a, b, pp, pmr, label});
  };
  const Ramp hold_half{half_pi, half_pi, cfg.switch_shape};
  const Ramp hold_pi{kPi, kPi, cfg.switch_shape};
  seg(0.0, t_symm_step, hold_half, Ramp{0.0, 0.0, cfg.switch_shape}, "reset");
  seg(t_symm_step, t_symm_step + rise, hold_half, Ramp{0.0, pm, cfg.switch_shape}, "symm-step");
  seg(t_symm_step + rise, t0, hold_half, Ramp{pm, pm, cfg.switch_shape}, "ready");
  seg(t0, switch_start, hold_half, Ramp{pm, pm, cfg.switch_shape}, "detect");
  seg(switch_start, switch_start + t_flip, Ramp{half_pi, kPi, cfg.switch_shape},
      Ramp{pm, pm, cfg.switch_shape}, "flip-up");
  seg(switch_start + t_flip, detect_step, hold_pi, Ramp{pm, pm, cfg.switch_shape}, "settle");
  seg(detect_step, detect_step + rise, hold_pi,
      Ramp{pm, cfg.theta_detect_rad, cfg.switch_shape}, "detect-step");
  seg(detect_step + rise, t2, hold_pi,
      Ramp{cfg.theta_detect_rad, cfg.theta_detect_rad, cfg.switch_shape}, "sense");

  sch.markers.t0 = t0;
  sch.markers.t1 = switch_start + 0.5 * t_flip;
  sch.markers.t2 = t2;
  sch.markers.flips = {sch.markers.t1};
  sch.markers.flip_readouts = {t2};

  sch.drive.amp_uA = (cfg.amplitude_n > 0.0 && cfg.exp_drive_ns > 0.0)
                         ? drive_amp_uA(cfg, scales)
                         : 0.0;
  sch.drive.freq_ghz = cfg.drive_freq_ghz;
  sch.drive.phase_rad = cfg.drive_phase_rad;
  sch.drive.t_ref_ns = t0;
  sch.drive.on_from_ns = t0;
  sch.drive.off_from_ns = drive_end;
  sch.drive.off_fall_ns = 0.0;  // hard AWG gate
  sch.drive.envelope = EnvelopeKind::None;
  return sch;
}

}  // namespace jdpd
