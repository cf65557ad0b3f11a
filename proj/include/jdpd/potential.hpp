#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "jdpd/circuit.hpp"

namespace jdpd {

enum class PotentialKind { SingleWell, Harmonic, DoubleWell };

struct PotentialMinimum {
  double position_rad = 0.0;
  double curvature_hghz = 0.0;        // d2U/dphi2, h*GHz per rad^2
  double local_frequency_ghz = 0.0;   // curvature-rescaled LC frequency
};

struct PotentialShape {
  PotentialKind kind = PotentialKind::SingleWell;
  std::vector<PotentialMinimum> minima;           // sorted by position
  std::optional<double> barrier_height_hghz;      // above the higher minimum
  std::optional<double> barrier_position_rad;
};

// U(phi) = E_L phi^2/2 - (Phi0/2pi) [Ic+ cos(phi+) cos(phi+phi-)
//                                    - Ic- sin(phi+) sin(phi+phi-)],
// i.e. U/E_L = phi^2/2 - b+ cos(phi+) cos(phi+phi-) + b- sin(phi+) sin(phi+phi-).
// Reduces to the symmetric two-junction form (coefficient 2 beta_L) at Ic- = 0.
double potential_value_hghz(const DeviceParams& p, const FluxBias& bias, double phi);

// Closed-form (dU/dphi, d2U/dphi2) in h*GHz units.
std::pair<double, double> potential_derivatives_hghz(const DeviceParams& p,
                                                     const FluxBias& bias, double phi);

struct ShapeOptions {
  double window_rad = 6.0;     // stationary-point search on [-window, window]
  double scan_step_rad = 1e-3;
  double root_tol_rad = 1e-10;
};

// Stationary-point census: sign-change scan of dU/dphi followed by bisection.
// Two or more minima classify as DoubleWell (reported pair = two lowest in
// energy); a single minimum is Harmonic when the Josephson coefficient is
// below 1e-9 E_L, SingleWell otherwise.
PotentialShape analyze_shape(const DeviceParams& p, const FluxBias& bias,
                             const ShapeOptions& opt = {});

}  // namespace jdpd
