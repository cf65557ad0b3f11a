#include "jdpd/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "jdpd/constants.hpp"
#include "jdpd/potential.hpp"

namespace jdpd {

void validate(const DeviceParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::domain_error(std::string("DeviceParams: ") + name + " must be positive");
    }
  };
  positive(p.ic1_uA, "ic1_uA");
  positive(p.ic2_uA, "ic2_uA");
  positive(p.l_center_pH, "l_center_pH");
  positive(p.c_sigma_fF, "c_sigma_fF");
  if (p.l_stray_pH < 0.0 || !std::isfinite(p.l_stray_pH)) {
    throw std::domain_error("DeviceParams: l_stray_pH must be non-negative");
  }
}

void validate(const ResonatorParams& r) {
  if (!(r.l_series_pH > 0.0) || !(r.c_coupling_fF > 0.0) || !(r.c_parallel_fF > 0.0)) {
    throw std::domain_error("ResonatorParams: all values must be positive");
  }
}

double EnergyScales::f0_ghz() const { return omega0_rad_ns / kTwoPi; }
double EnergyScales::e_l_rad_ns() const { return kTwoPi * e_l_hghz; }
double EnergyScales::kinetic_coeff_rad_ns() const {
  return omega0_rad_ns * omega0_rad_ns / e_l_rad_ns();
}
double EnergyScales::lambda_rad() const { return std::sqrt(omega0_rad_ns / e_l_rad_ns()); }

EnergyScales derive_energies(const DeviceParams& p) {
  validate(p);
  const double L = p.l_center_pH * 1e-12;
  const double C = p.c_sigma_fF * 1e-15;
  const double ic = p.ic_mean_uA() * 1e-6;

  EnergyScales s;
  s.e_l_hghz = joule_to_hghz(kPhi0Bar * kPhi0Bar / L);
  s.e_j_hghz = joule_to_hghz(kPhi0Bar * ic);
  s.beta_l = ic * L / kPhi0Bar;
  s.omega0_rad_ns = 1e-9 / std::sqrt(L * C);
  s.z0_ohm = std::sqrt(L / C);
  s.sigma_rad = 2.0 * kElementaryCharge * std::sqrt(2.0 * s.z0_ohm / kHbar);
  // Charging energy fixed by the normative LC rule omega0 = sqrt(8 Ec El)/hbar.
  s.e_c_hghz = s.f0_ghz() * s.f0_ghz() / (8.0 * s.e_l_hghz);
  s.double_well_capable = (2.0 * s.beta_l > 1.0);
  return s;
}

double b_plus(const DeviceParams& p) {
  return p.ic_plus_uA() * 1e-6 * p.l_center_pH * 1e-12 / kPhi0Bar;
}

double b_minus(const DeviceParams& p) {
  return p.ic_minus_uA() * 1e-6 * p.l_center_pH * 1e-12 / kPhi0Bar;
}

FluxBias bias_from_currents(const MutualMatrix& m, double i_dc1_uA, double i_dc2_uA) {
  const double i1 = i_dc1_uA * 1e-6;
  const double i2 = i_dc2_uA * 1e-6;
  const double md = m.m_dir_pH * 1e-12;
  const double mo = m.m_opp_pH * 1e-12;
  const double phi1 = (md * i1 + mo * i2) / kPhi0Bar;
  const double phi2 = (-mo * i1 - md * i2) / kPhi0Bar;
  return FluxBias{0.5 * (phi1 + phi2), 0.5 * (phi1 - phi2)};
}

std::pair<double, double> currents_for_bias_uA(const MutualMatrix& m, const FluxBias& bias) {
  const double md = m.m_dir_pH * 1e-12;
  const double mo = m.m_opp_pH * 1e-12;
  const double det = -(md * md) + mo * mo;
  if (std::abs(det) < 1e-12 * (md * md + mo * mo)) {
    throw std::domain_error("MutualMatrix is singular: |m_dir| == |m_opp|");
  }
  const double f1 = (bias.phi_plus + bias.phi_minus) * kPhi0Bar;
  const double f2 = (bias.phi_plus - bias.phi_minus) * kPhi0Bar;
  // Solve {{md, mo}, {-mo, -md}} (I1, I2)^T = (f1, f2)^T.
  const double i1 = (-md * f1 - mo * f2) / det;
  const double i2 = (mo * f1 + md * f2) / det;
  return {i1 * 1e6, i2 * 1e6};
}

double effective_inductance_pH(const DeviceParams& p, const FluxBias& bias, Well well) {
  const PotentialShape shape = analyze_shape(p, bias);
  if (shape.minima.empty()) {
    throw std::domain_error("effective_inductance: potential has no local minimum");
  }
  const PotentialMinimum* chosen = nullptr;
  switch (well) {
    case Well::Left:
      chosen = &shape.minima.front();
      break;
    case Well::Right:
      chosen = &shape.minima.back();
      break;
    case Well::Auto: {
      // Global minimum; on a degenerate pair prefer the left well.
      double best = 0.0;
      for (const auto& m : shape.minima) {
        const double u = potential_value_hghz(p, bias, m.position_rad);
        if (!chosen || u < best - 1e-12 * std::abs(best)) {
          chosen = &m;
          best = u;
        }
      }
      break;
    }
  }
  if (!(chosen->curvature_hghz > 0.0)) {
    throw std::domain_error("effective_inductance: zero curvature at the selected minimum");
  }
  const double upp_si = chosen->curvature_hghz * kPlanck * 1e9;  // J / rad^2
  return kPhi0Bar * kPhi0Bar / upp_si * 1e12;
}

double readout_frequency_ghz(const DeviceParams& p, const ResonatorParams& r,
                             const FluxBias& bias, Well well) {
  validate(r);
  const double lj = effective_inductance_pH(p, bias, well) * 1e-12;
  const double c = (r.c_coupling_fF + r.c_parallel_fF) * 1e-15;
  const double l = lj + r.l_series_pH * 1e-12;
  return 1e-9 / (kTwoPi * std::sqrt(c * l));
}

}  // namespace jdpd
