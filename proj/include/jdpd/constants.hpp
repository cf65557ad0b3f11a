#pragma once

// Internal unit system: hbar = 1, time in ns, phases dimensionless (rad),
// energies as angular frequencies in rad/ns. User-facing energies are
// reported in h*GHz and frequencies in GHz (cycles/ns); conversion is a
// plain factor of 2*pi between the two.

namespace jdpd {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// CODATA 2018 exact values (SI).
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kHbar = 1.054571817e-34;              // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kFluxQuantum = kPlanck / (2.0 * kElementaryCharge);  // Wb
inline constexpr double kPhi0Bar = kFluxQuantum / kTwoPi;     // Wb per rad

inline constexpr double ghz_to_rad_ns(double f_ghz) { return kTwoPi * f_ghz; }
inline constexpr double rad_ns_to_ghz(double w) { return w / kTwoPi; }

// Energy in joule -> h*GHz.
inline constexpr double joule_to_hghz(double e) { return e / kPlanck / 1e9; }

}  // namespace jdpd
