#pragma once

#include <utility>

namespace jdpd {

// Physical identity of one JDPD cell. Fields carry the units used on device
// datasheets; conversion to the internal unit system happens in
// derive_energies and in the potential/engine code.
struct DeviceParams {
  double ic1_uA = 5.4;
  double ic2_uA = 5.4;
  double l_center_pH = 220.0;
  double c_sigma_fF = 78.0;  // total effective junction capacitance C_sigma
  double l_stray_pH = 0.0;   // per-branch stray inductance; assumed << L_J, not modeled

  double ic_plus_uA() const { return ic1_uA + ic2_uA; }
  double ic_minus_uA() const { return ic1_uA - ic2_uA; }
  double ic_mean_uA() const { return 0.5 * (ic1_uA + ic2_uA); }
};

// Throws std::domain_error on non-positive ic1/ic2/L/C or negative stray L.
void validate(const DeviceParams& p);

struct EnergyScales {
  double e_l_hghz = 0.0;      // (Phi0/2pi)^2 / L
  double e_j_hghz = 0.0;      // (Phi0/2pi) * Ic, Ic = (ic1+ic2)/2
  double e_c_hghz = 0.0;      // charging energy consistent with omega0 = 1/sqrt(L*C_sigma)
  double beta_l = 0.0;        // 2 pi Ic L / Phi0
  double omega0_rad_ns = 0.0; // small-oscillation frequency of the harmonic configuration
  double z0_ohm = 0.0;        // sqrt(L / C_sigma)
  double sigma_rad = 0.0;     // 2 e sqrt(2 Z0 / hbar); wavepacket standard deviation
  bool double_well_capable = false;  // 2 beta_L > 1

  double f0_ghz() const;          // omega0 / 2pi
  double e_l_rad_ns() const;      // E_L as angular frequency
  double kinetic_coeff_rad_ns() const;  // A in H = (A/2) n^2 + U(phi); A = omega0^2 / E_L
  double lambda_rad() const;      // zero-point length: lambda^2 = omega0 / E_L
};

// Instantaneous potential configuration, common/differential flux pair.
// Values outside [-pi, pi] are valid; periodicity lives in the potential.
struct FluxBias {
  double phi_plus = 0.0;
  double phi_minus = 0.0;
};

struct ResonatorParams {
  double l_series_pH = 300.0;
  double c_coupling_fF = 100.0;
  double c_parallel_fF = 1400.0;
};

void validate(const ResonatorParams& r);

// Mutual inductances of the two dc flux lines. The full matrix is
// {{m_dir, m_opp}, {-m_opp, -m_dir}}; it is invertible iff |m_dir| != |m_opp|.
struct MutualMatrix {
  double m_dir_pH = 1.0;
  double m_opp_pH = 0.1;
};

EnergyScales derive_energies(const DeviceParams& p);

// Dimensionless Josephson coefficients of the potential, in units of E_L:
// b_plus = 2 pi L Ic+ / Phi0 (equals 2 beta_L), b_minus likewise with Ic-.
double b_plus(const DeviceParams& p);
double b_minus(const DeviceParams& p);

FluxBias bias_from_currents(const MutualMatrix& m, double i_dc1_uA, double i_dc2_uA);

// Inverse of bias_from_currents. Throws std::domain_error on a singular matrix.
std::pair<double, double> currents_for_bias_uA(const MutualMatrix& m, const FluxBias& bias);

enum class Well { Auto, Left, Right };

// Linearized JDPD inductance (Phi0/2pi)^2 / U''(phi_min), evaluated at the
// minimum where the phase particle sits. Auto picks the global minimum and
// resolves degenerate double minima to the left well.
double effective_inductance_pH(const DeviceParams& p, const FluxBias& bias, Well well = Well::Auto);

// Readout resonance of the lumped resonator loaded by the JDPD inductance.
double readout_frequency_ghz(const DeviceParams& p, const ResonatorParams& r,
                             const FluxBias& bias, Well well = Well::Auto);

}  // namespace jdpd
